#pragma once

// Discrete groupoid correspondences X: G <- G in fundamental-domain form: an
// edge set F with range/source vertices and the self-similar cocycle
// (g, x) -> (g∘x, g|_x).

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "gcorr/base.hpp"
#include "gcorr/error.hpp"
#include "gcorr/report.hpp"

namespace gcorr {

  struct Edge {
    std::string name;
    int         rng;
    int         src;
  };

  // x_1 ... x_n with src(x_i) = rng(x_{i+1}); range = rng(x_1), source =
  // src(x_n).  The empty path at v has range = source = v.
  struct Path {
    int              range  = 0;
    int              source = 0;
    std::vector<int> edges;

    [[nodiscard]] std::size_t size() const noexcept {
      return edges.size();
    }
    [[nodiscard]] bool empty() const noexcept {
      return edges.empty();
    }

    bool operator==(Path const&) const = default;
    bool operator<(Path const& that) const {
      if (edges.size() != that.edges.size()) {
        return edges.size() < that.edges.size();
      }
      return std::tie(edges, range, source)
             < std::tie(that.edges, that.range, that.source);
    }
  };

  // Is `a` a prefix of `b` (vertices included)?
  inline bool is_prefix(Path const& a, Path const& b) {
    if (a.range != b.range || a.size() > b.size()) {
      return false;
    }
    if (!std::equal(a.edges.begin(), a.edges.end(), b.edges.begin())) {
      return false;
    }
    return a.size() < b.size() || a.source == b.source;
  }

  // The part of `b` after the prefix `a`; requires is_prefix(a, b).
  inline Path strip_prefix(Path const& a, Path const& b) {
    Path t;
    t.range  = a.source;
    t.source = b.source;
    t.edges.assign(b.edges.begin() + static_cast<long>(a.size()),
                   b.edges.end());
    return t;
  }

  class Correspondence {
   public:
    struct ActResult {
      int   edge;
      Arrow restriction;
    };

    struct CocycleRow {
      Arrow g;
      int   x;
      int   gx;
      Arrow restriction;
    };

    Correspondence() = default;
    Correspondence(Base base, std::vector<Edge> edges)
        : _base(std::move(base)), _edges(std::move(edges)) {
      for (std::size_t i = 0; i < _edges.size(); ++i) {
        auto const& e = _edges[i];
        if (e.rng < 0 || e.rng >= _base.object_count() || e.src < 0
            || e.src >= _base.object_count()) {
          throw input_error("edge '" + e.name + "' has an unknown vertex");
        }
        if (!_edge_index.emplace(e.name, static_cast<int>(i)).second) {
          throw input_error("duplicate edge '" + e.name + "'");
        }
      }
      _fibers.assign(_base.object_count(), {});
      for (std::size_t i = 0; i < _edges.size(); ++i) {
        _fibers[_edges[i].rng].push_back(static_cast<int>(i));
      }
    }

    // Cocycle rows.  For a finite base: any arrow.  For a presented group:
    // generator letters (the defining rows) or longer words (checked for
    // consistency by validateCorrespondence).
    void set_row(Arrow const& g, int x, int gx, Arrow const& restriction) {
      if (x < 0 || x >= static_cast<int>(_edges.size()) || gx < 0
          || gx >= static_cast<int>(_edges.size())) {
        throw input_error("cocycle row refers to an unknown edge");
      }
      bool generator = !_base.is_presented()
                       || (g.code.size() == 1 && g.code[0] > 0);
      auto& rows = generator ? _rows : _extra_rows;
      for (auto& r : rows) {
        if (r.g == g && r.x == x) {
          throw input_error("duplicate cocycle row for (" + _base.name(g)
                            + ", " + _edges[x].name + ")");
        }
      }
      rows.push_back({g, x, gx, restriction});
      if (generator) {
        _row_index[{g.code, x}] = rows.size() - 1;
      }
    }

    [[nodiscard]] Base const& base() const noexcept {
      return _base;
    }
    [[nodiscard]] std::vector<Edge> const& edges() const noexcept {
      return _edges;
    }
    [[nodiscard]] Edge const& edge(int x) const {
      return _edges.at(x);
    }
    [[nodiscard]] std::vector<CocycleRow> const& rows() const noexcept {
      return _rows;
    }
    [[nodiscard]] std::vector<CocycleRow> const& extra_rows() const noexcept {
      return _extra_rows;
    }
    [[nodiscard]] int edge_index(std::string const& name) const {
      auto it = _edge_index.find(name);
      if (it == _edge_index.end()) {
        throw input_error("unknown edge '" + name + "'");
      }
      return it->second;
    }
    [[nodiscard]] bool has_edge(std::string const& name) const {
      return _edge_index.count(name) != 0;
    }
    [[nodiscard]] std::vector<int> const& fiber(int v) const {
      return _fibers.at(v);
    }
    [[nodiscard]] int edge_count() const noexcept {
      return static_cast<int>(_edges.size());
    }
    [[nodiscard]] bool single_char_edges() const {
      for (auto const& e : _edges) {
        if (e.name.size() != 1) {
          return false;
        }
      }
      return true;
    }

    // g∘x and g|_x for src(g) = rng(x); nullopt when the table has no
    // answer.
    [[nodiscard]] std::optional<ActResult> act_edge(Arrow const& g,
                                                    int          x) const {
      if (_base.src(g) != _edges.at(x).rng) {
        throw precondition_error("act_edge: source of " + _base.name(g)
                                 + " is not the range of edge "
                                 + _edges[x].name);
      }
      if (!_base.is_presented()) {
        auto it = _row_index.find({g.code, x});
        if (it != _row_index.end()) {
          auto const& r = _rows[it->second];
          return ActResult{r.gx, r.restriction};
        }
        if (_base.is_unit(g)) {
          return ActResult{x, _base.unit(_edges[x].src)};
        }
        return std::nullopt;
      }
      // letters act right to left: (l_1 ... l_k)∘x = l_1∘(... (l_k∘x))
      int   cur = x;
      Arrow r   = _base.unit(0);
      for (auto it = g.code.rbegin(); it != g.code.rend(); ++it) {
        auto step = act_letter(*it, cur);
        if (!step) {
          return std::nullopt;
        }
        cur = step->edge;
        r   = _base.mul(step->restriction, r);
      }
      return ActResult{cur, r};
    }

    // (g∘p, g|_p), threading restrictions from the first edge.
    [[nodiscard]] std::optional<std::pair<Path, Arrow>>
    try_act(Arrow const& g, Path const& p) const {
      if (_base.src(g) != p.range) {
        throw precondition_error("actOnPath: src(" + _base.name(g)
                                 + ") != rng(path)");
      }
      Path  out;
      Arrow r = g;
      out.range = _base.rng(g);
      for (int x : p.edges) {
        auto step = act_edge(r, x);
        if (!step) {
          return std::nullopt;
        }
        out.edges.push_back(step->edge);
        r = step->restriction;
      }
      out.source = out.edges.empty() ? out.range
                                     : _edges[out.edges.back()].src;
      return std::make_pair(std::move(out), std::move(r));
    }

    [[nodiscard]] std::pair<Path, Arrow> actOnPath(Arrow const& g,
                                                   Path const&  p) const {
      auto res = try_act(g, p);
      if (!res) {
        throw precondition_error("actOnPath: cocycle table has no entry for "
                                 + _base.name(g) + " on " + path_name(p));
      }
      return *res;
    }

    [[nodiscard]] std::vector<Path> pathsOfLength(std::size_t n) const {
      std::vector<Path> level;
      for (int v = 0; v < _base.object_count(); ++v) {
        level.push_back(Path{v, v, {}});
      }
      for (std::size_t k = 0; k < n; ++k) {
        std::vector<Path> next;
        for (auto const& p : level) {
          for (int x : _fibers[p.source]) {
            Path q = p;
            q.edges.push_back(x);
            q.source = _edges[x].src;
            next.push_back(std::move(q));
          }
        }
        level = std::move(next);
      }
      std::sort(level.begin(), level.end());
      return level;
    }

    // Points of X = F x_{s,r} G are pairs (edge, arrow).  Returns the h
    // with x·h = y, if any.
    [[nodiscard]] std::optional<Arrow>
    bracketEdges(std::pair<int, Arrow> const& x,
                 std::pair<int, Arrow> const& y) const {
      for (auto const* p : {&x, &y}) {
        if (p->first < 0 || p->first >= edge_count()
            || _base.rng(p->second) != _edges[p->first].src) {
          throw input_error("malformed point of X: edge/arrow mismatch");
        }
      }
      if (x.first != y.first) {
        return std::nullopt;
      }
      return _base.mul(_base.inverse(x.second), y.second);
    }

    struct ProperSubset {
      std::vector<int> ymax;
      std::vector<int> regular;
    };

    [[nodiscard]] ProperSubset maximalProperSubset() const {
      ProperSubset out;
      for (int v = 0; v < _base.object_count(); ++v) {
        out.ymax.push_back(v);  // F is finite, so every fiber is finite
        if (!_fibers[v].empty()) {
          out.regular.push_back(v);
        }
      }
      return out;
    }

    [[nodiscard]] std::string path_name(Path const& p) const {
      if (p.empty()) {
        return "[" + _base.object_name(p.range) + "]";
      }
      std::string out;
      bool        compact = single_char_edges();
      for (std::size_t i = 0; i < p.size(); ++i) {
        if (i > 0 && !compact) {
          out += '.';
        }
        out += _edges[p.edges[i]].name;
      }
      return out;
    }

    // Inverse of path_name.  An empty path is "[v]".
    [[nodiscard]] Path parse_path(std::string const& s) const {
      if (s.size() >= 2 && s.front() == '[' && s.back() == ']') {
        int v = _base.object_index(s.substr(1, s.size() - 2));
        return Path{v, v, {}};
      }
      if (s.empty()) {
        throw input_error("empty path needs an explicit vertex, e.g. [v]");
      }
      std::vector<int> es;
      if (s.find('.') != std::string::npos || has_edge(s)) {
        std::size_t pos = 0;
        while (pos <= s.size()) {
          auto dot = s.find('.', pos);
          auto tok = s.substr(
              pos, dot == std::string::npos ? std::string::npos : dot - pos);
          es.push_back(edge_index(tok));
          pos = dot == std::string::npos ? s.size() + 1 : dot + 1;
        }
      } else if (single_char_edges()) {
        for (char c : s) {
          es.push_back(edge_index(std::string(1, c)));
        }
      } else {
        throw input_error("cannot split path '" + s + "' into edges");
      }
      return make_path(es);
    }

    [[nodiscard]] Path make_path(std::vector<int> const& es) const {
      if (es.empty()) {
        throw input_error("make_path: empty edge list");
      }
      for (std::size_t i = 0; i + 1 < es.size(); ++i) {
        if (_edges.at(es[i]).src != _edges.at(es[i + 1]).rng) {
          throw input_error("edges " + _edges[es[i]].name + " and "
                            + _edges[es[i + 1]].name + " do not compose");
        }
      }
      return Path{_edges.at(es.front()).rng, _edges.at(es.back()).src, es};
    }

    [[nodiscard]] Path concat(Path const& a, Path const& b) const {
      if (a.source != b.range) {
        throw precondition_error("concat: " + path_name(a) + " and "
                                 + path_name(b) + " do not compose");
      }
      Path out = a;
      out.edges.insert(out.edges.end(), b.edges.begin(), b.edges.end());
      out.source = b.source;
      return out;
    }

    [[nodiscard]] Path prefix(Path const& p, std::size_t k) const {
      if (k >= p.size()) {
        return p;
      }
      Path out{p.range, 0, {p.edges.begin(), p.edges.begin() + long(k)}};
      out.source = k == 0 ? p.range : _edges[out.edges.back()].src;
      return out;
    }

    // Word-level cocycle evaluation used to check composite rows: acts by
    // each raw letter in turn without normalizing the word first.
    [[nodiscard]] std::optional<ActResult>
    act_raw_word(std::vector<int32_t> const& letters, int x) const {
      int   cur = x;
      Arrow r   = _base.unit(_edges.at(x).src);
      for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
        auto step = act_letter(*it, cur);
        if (!step) {
          return std::nullopt;
        }
        cur = step->edge;
        r   = _base.mul(step->restriction, r);
      }
      return ActResult{cur, r};
    }

   private:
    // Presented groups: a generator letter uses its row; an inverse letter
    // solves z∘x = y for x and returns (x, (z|_x)^{-1}).
    [[nodiscard]] std::optional<ActResult> act_letter(int32_t l, int y) const {
      if (l > 0) {
        auto it = _row_index.find({{l}, y});
        if (it == _row_index.end()) {
          return std::nullopt;
        }
        auto const& r = _rows[it->second];
        return ActResult{r.gx, r.restriction};
      }
      std::optional<ActResult> found;
      for (auto const& r : _rows) {
        if (r.g.code == std::vector<int32_t>{-l} && r.gx == y) {
          if (found) {
            return std::nullopt;  // not injective
          }
          found = ActResult{r.x, _base.inverse(r.restriction)};
        }
      }
      return found;
    }

    Base                                               _base;
    std::vector<Edge>                                  _edges;
    std::map<std::string, int>                         _edge_index;
    std::vector<std::vector<int>>                      _fibers;
    std::vector<CocycleRow>                            _rows;
    std::vector<CocycleRow>                            _extra_rows;
    std::map<std::pair<std::vector<int32_t>, int>, std::size_t> _row_index;
  };

  ////////////////////////////////////////////////////////////////////////
  // Regularity sets
  ////////////////////////////////////////////////////////////////////////

  // R as a membership mask over objects.
  using RegSet = std::vector<bool>;

  inline RegSet make_regset(Correspondence const&   C,
                            std::vector<int> const& members) {
    RegSet R(C.base().object_count(), false);
    for (int v : members) {
      R.at(v) = true;
    }
    return R;
  }

  // Empty report iff src(g) ∈ R <=> rng(g) ∈ R for every arrow.
  inline Report check_regset(Correspondence const& C, RegSet const& R) {
    Report rep("regularity set");
    auto const& B = C.base();
    if (static_cast<int>(R.size()) != B.object_count()) {
      rep.fail("regularity", "membership mask has the wrong size");
      return rep;
    }
    if (!B.is_presented()) {
      for (auto const& a : B.arrows_up_to(0)) {
        if (R[B.src(a)] != R[B.rng(a)]) {
          rep.fail("regularity", "R is not invariant under arrows",
                   B.name(a));
        }
      }
    }
    for (int v = 0; v < B.object_count(); ++v) {
      if (R[v] && C.fiber(v).empty()) {
        rep.note("vertex " + B.object_name(v)
                 + " in R has an empty fiber (degenerate vertex)");
      }
    }
    return rep;
  }

  ////////////////////////////////////////////////////////////////////////
  // Validation
  ////////////////////////////////////////////////////////////////////////

  // Exhaustive for a finite base; for a presented group every word of length
  // <= wordcap is checked against the generator rows.
  inline Report validateCorrespondence(Correspondence const& C,
                                       std::size_t           wordcap = 4) {
    Report      rep("correspondence");
    auto const& B  = C.base();
    auto const  nE = C.edge_count();
    auto        en = [&](int x) { return C.edge(x).name; };

    if (!B.is_presented()) {
      auto g_rep = validate(B.finite());
      if (!g_rep.ok()) {
        for (auto const& f : g_rep.violations()) {
          rep.fail("base:" + f.code, f.message, f.witness);
        }
        return rep;
      }
    }

    auto arrows = B.arrows_up_to(wordcap);
    rep.fact("arrows_checked", arrows.size());

    // per arrow: defined, vertex laws, bijection
    for (auto const& g : arrows) {
      std::map<int, int> hits;
      for (int x = 0; x < nE; ++x) {
        if (C.edge(x).rng != B.src(g)) {
          continue;
        }
        auto r = C.act_edge(g, x);
        auto w = "(" + B.name(g) + ", " + en(x) + ")";
        if (!r) {
          rep.fail("cocycle-table", "no cocycle entry", w);
          continue;
        }
        if (C.edge(r->edge).rng != B.rng(g)) {
          rep.fail("range", "rng(g∘x) != rng(g)", w);
        }
        if (B.src(r->restriction) != C.edge(x).src
            || B.rng(r->restriction) != C.edge(r->edge).src) {
          rep.fail("restriction",
                   "g|_x must go from src(x) to src(g∘x)",
                   w + " -> " + B.name(r->restriction));
        }
        if (B.is_unit(g)
            && (r->edge != x || !B.is_unit(r->restriction))) {
          rep.fail("unit", "unit does not act trivially", w);
        }
        ++hits[r->edge];
      }
      for (int y = 0; y < nE; ++y) {
        if (C.edge(y).rng == B.rng(g)) {
          if (hits[y] != 1) {
            rep.fail("bijection",
                     "x -> g∘x is not a bijection onto the fiber",
                     B.name(g) + " hits " + en(y) + " "
                         + std::to_string(hits[y]) + " times");
          }
        }
      }
    }

    // cocycle law (hg)∘x = h∘(g∘x), (hg)|_x = h|_{g∘x} g|_x
    std::size_t cocycle_checks = 0;
    for (auto const& h : arrows) {
      for (auto const& g : arrows) {
        auto hg = B.compose(h, g);
        if (!hg) {
          continue;
        }
        if (B.is_presented()
            && B.word_length(*hg) > wordcap) {  // outside the checked ball
          continue;
        }
        for (int x = 0; x < nE; ++x) {
          if (C.edge(x).rng != B.src(g)) {
            continue;
          }
          auto gx = C.act_edge(g, x);
          auto lx = C.act_edge(*hg, x);
          if (!gx || !lx) {
            continue;  // reported above
          }
          auto hgx = C.act_edge(h, gx->edge);
          if (!hgx) {
            continue;
          }
          ++cocycle_checks;
          auto rr = B.compose(hgx->restriction, gx->restriction);
          auto w  = "(" + B.name(h) + ", " + B.name(g) + ", " + en(x) + ")";
          if (lx->edge != hgx->edge) {
            rep.fail("cocycle", "(hg)∘x != h∘(g∘x)", w);
          } else if (!rr || !(*rr == lx->restriction)) {
            rep.fail("cocycle", "(hg)|_x != h|_{g∘x}·g|_x", w);
          }
        }
      }
    }

    // presented groups: composite rows and raw words must agree with the
    // letter-by-letter action (this is where relations become visible)
    if (B.is_presented()) {
      for (auto const& row : C.extra_rows()) {
        auto r = C.act_edge(row.g, row.x);
        ++cocycle_checks;
        auto w = "(" + B.name(row.g) + ", " + en(row.x) + ")";
        if (!r) {
          rep.fail("cocycle-table", "composite row cannot be evaluated", w);
        } else if (r->edge != row.gx || !(r->restriction == row.restriction)) {
          rep.fail("cocycle",
                   "declared row disagrees with the cocycle of its letters",
                   w + " declared (" + en(row.gx) + ", "
                       + B.name(row.restriction) + ") derived ("
                       + en(r->edge) + ", " + B.name(r->restriction) + ")");
        }
      }
      if (B.presented().abelian) {
        auto k = static_cast<int32_t>(B.presented().generators.size());
        std::vector<std::vector<int32_t>> words{{}};
        for (std::size_t len = 1; len <= wordcap; ++len) {
          std::vector<std::vector<int32_t>> next;
          for (auto const& w : words) {
            if (w.size() + 1 != len) {
              continue;
            }
            for (int32_t l = -k; l <= k; ++l) {
              if (l != 0) {
                auto v = w;
                v.push_back(l);
                next.push_back(v);
              }
            }
          }
          words.insert(words.end(), next.begin(), next.end());
        }
        for (auto const& w : words) {
          Arrow nf{B.presented().normalize(w)};
          for (int x = 0; x < nE; ++x) {
            auto a = C.act_raw_word(w, x);
            auto b = C.act_edge(nf, x);
            if (a && b
                && (a->edge != b->edge
                    || !(a->restriction == b->restriction))) {
              rep.fail("cocycle",
                       "action does not respect the relations",
                       "word of length " + std::to_string(w.size()) + " = "
                           + B.name(nf) + " on " + en(x));
            }
          }
        }
      }
    }
    rep.fact("cocycle_checks", cocycle_checks);
    return rep;
  }

}  // namespace gcorr
