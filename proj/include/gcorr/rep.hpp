#pragma once

// Finite matrix representations.  The truncated Fock representation lives
// on labels (p, h) with |p| <= N, h an arrow with rng(h) = src(p) (word
// length <= wordcap for presented groups).  The boundary representation
// lives on the labels of BoundaryTrunc(N, R), undecorated.
//
// All operators are partial permutations, stored column-wise: col[j] is the
// row hit by label j, ZERO, or OUT.  OUT means the exact image left the
// truncation (Fock) or is not a single label (boundary); exported matrices
// read OUT as 0.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gcorr/correspondence.hpp"
#include "gcorr/error.hpp"
#include "gcorr/islice.hpp"
#include "gcorr/model.hpp"
#include "gcorr/pathspace.hpp"
#include "gcorr/report.hpp"

namespace gcorr {

  struct Label {
    Path  path;
    Arrow g;  // Fock only
    bool  cylinder = false;

    [[nodiscard]] std::size_t level() const noexcept {
      return path.size();
    }
    bool operator==(Label const&) const = default;
    bool operator<(Label const& that) const {
      return std::tie(path, g, cylinder)
             < std::tie(that.path, that.g, that.cylinder);
    }
  };

  struct Operator {
    static constexpr int ZERO = -1;
    static constexpr int OUT  = -2;

    std::vector<int> col;

    [[nodiscard]] std::size_t size() const noexcept {
      return col.size();
    }
    bool operator==(Operator const&) const = default;
  };

  // (A∘B)[j] = A[B[j]]; ZERO and OUT pass through.
  inline Operator compose(Operator const& A, Operator const& B) {
    if (A.size() != B.size()) {
      throw precondition_error("compose: dimension mismatch");
    }
    Operator out{std::vector<int>(B.size())};
    for (std::size_t j = 0; j < B.size(); ++j) {
      out.col[j] = B.col[j] < 0 ? B.col[j] : A.col[B.col[j]];
    }
    return out;
  }

  inline Operator truncate(Operator A) {
    for (auto& c : A.col) {
      if (c == Operator::OUT) {
        c = Operator::ZERO;
      }
    }
    return A;
  }

  // Transpose of the truncated matrix.
  inline Operator transpose(Operator const& A) {
    Operator out{std::vector<int>(A.size(), Operator::ZERO)};
    for (std::size_t j = 0; j < A.size(); ++j) {
      if (A.col[j] >= 0) {
        out.col[A.col[j]] = static_cast<int>(j);
      }
    }
    return out;
  }

  // At most one 1 per row and per column.
  inline bool is_partial_permutation(Operator const& A) {
    std::vector<bool> hit(A.size(), false);
    for (auto c : A.col) {
      if (c >= 0) {
        if (c >= static_cast<int>(A.size()) || hit[c]) {
          return false;
        }
        hit[c] = true;
      }
    }
    return true;
  }

  class Rep {
   public:
    enum class Kind { Fock, Boundary };

    static Rep fock(Correspondence const& C, std::size_t N,
                    std::size_t wordcap) {
      if (N < 1) {
        throw precondition_error("Fock representation needs N >= 1");
      }
      Rep r(C, Kind::Fock, N, wordcap);
      auto const& B      = C.base();
      auto        arrows = B.arrows_up_to(wordcap);
      for (std::size_t k = 0; k <= N; ++k) {
        for (auto const& p : C.pathsOfLength(k)) {
          for (auto const& h : arrows) {
            if (B.rng(h) == p.source) {
              r._labels.push_back(Label{p, h, false});
            }
          }
        }
      }
      // X_0 = G: the empty path sits at rng(h)
      r.finish();
      return r;
    }

    static Rep boundary(Correspondence const& C, RegSet const& R,
                        std::size_t N) {
      Rep  r(C, Kind::Boundary, N, 0);
      auto bt = buildBoundary(C, R, N);
      r._R    = R;
      for (auto const& pt : bt.points) {
        r._labels.push_back(Label{pt.path, Arrow{}, pt.cylinder});
      }
      r.finish();
      return r;
    }

    [[nodiscard]] Kind kind() const noexcept {
      return _kind;
    }
    [[nodiscard]] bool is_fock() const noexcept {
      return _kind == Kind::Fock;
    }
    [[nodiscard]] std::size_t depth() const noexcept {
      return _N;
    }
    [[nodiscard]] std::size_t wordcap() const noexcept {
      return _wordcap;
    }
    [[nodiscard]] Correspondence const& corr() const noexcept {
      return *_C;
    }
    [[nodiscard]] RegSet const& regset() const noexcept {
      return _R;
    }
    [[nodiscard]] std::size_t size() const noexcept {
      return _labels.size();
    }
    [[nodiscard]] std::vector<Label> const& labels() const noexcept {
      return _labels;
    }
    [[nodiscard]] Label const& label(std::size_t j) const {
      return _labels.at(j);
    }
    [[nodiscard]] std::optional<std::size_t> index_of(Label const& l) const {
      auto it = _index.find(l);
      if (it == _index.end()) {
        return std::nullopt;
      }
      return it->second;
    }
    [[nodiscard]] std::string label_name(std::size_t j) const {
      auto const& l = _labels.at(j);
      if (is_fock()) {
        return _C->path_name(l.path) + "|" + _C->base().name(l.g);
      }
      return point_name(*_C, Point{l.path, l.cylinder});
    }
    // Range vertex of a label.
    [[nodiscard]] int vertex(std::size_t j) const {
      return _labels.at(j).path.range;
    }

    // Growth bound for restrictions: |g|_t| <= |g| * rho^|t|.
    [[nodiscard]] std::size_t rho() const noexcept {
      return _rho;
    }

    [[nodiscard]] Operator identity() const {
      Operator out{std::vector<int>(size())};
      for (std::size_t j = 0; j < size(); ++j) {
        out.col[j] = static_cast<int>(j);
      }
      return out;
    }

    [[nodiscard]] Operator op(ISElement const& s) const {
      Operator out{std::vector<int>(size(), Operator::ZERO)};
      for (std::size_t j = 0; j < size(); ++j) {
        out.col[j] = is_fock() ? fock_image(s, j) : boundary_image(s, j);
      }
      return out;
    }

    // T_s^*: the matrix transpose for Fock, θ_{s^*} for the boundary.
    [[nodiscard]] Operator adjoint_op(ISElement const& s) const {
      if (is_fock()) {
        return transpose(truncate(op(s)));
      }
      return op(isgAdjoint(*_C, s));
    }

    // φ(1_{Z(r)}) as a diagonal operator.
    [[nodiscard]] Operator phi(Path const& r) const {
      Operator out{std::vector<int>(size(), Operator::ZERO)};
      for (std::size_t j = 0; j < size(); ++j) {
        auto const& l = _labels[j];
        if (is_prefix(r, l.path)) {
          out.col[j] = static_cast<int>(j);
        } else if (!is_fock() && l.cylinder && is_prefix(l.path, r)) {
          auto c = canonicalize(*_C, _R, _N, Point{r, true});
          if (c && c->path == l.path && c->cylinder) {
            out.col[j] = static_cast<int>(j);
          } else {
            out.col[j] = Operator::OUT;
          }
        }
      }
      return out;
    }

    // Is label j inside the truncation for a relation that raises the
    // level by L and word length by W?  The boundary has no interior notion;
    // its OUT entries are skipped instead.
    [[nodiscard]] bool interior(std::size_t j, std::size_t L,
                                std::size_t W) const {
      if (!is_fock()) {
        return true;
      }
      auto const& l = _labels[j];
      if (l.level() + L > _N) {
        return false;
      }
      if (!_C->base().is_presented()) {
        return true;
      }
      return _C->base().word_length(l.g) + W <= _wordcap;
    }

    // Word growth of an arrow factor over the whole truncation.
    [[nodiscard]] std::size_t growth(Arrow const& g) const {
      std::size_t w = _C->base().word_length(g);
      for (std::size_t k = 0; k < _N && _rho > 1; ++k) {
        w *= _rho;
      }
      return w;
    }

   private:
    Rep(Correspondence const& C, Kind k, std::size_t N, std::size_t wordcap)
        : _C(&C), _kind(k), _N(N), _wordcap(wordcap) {
      for (auto const& row : C.rows()) {
        _rho = std::max(_rho, C.base().word_length(row.restriction));
      }
    }

    void finish() {
      std::sort(_labels.begin(), _labels.end());
      for (std::size_t j = 0; j < _labels.size(); ++j) {
        _index.emplace(_labels[j], j);
      }
    }

    int fock_image(ISElement const& s, std::size_t j) const {
      auto const& l = _labels[j];
      if (s.is_zero()) {
        return Operator::ZERO;
      }
      if (s.is_one()) {
        return static_cast<int>(j);
      }
      if (!is_prefix(s.q, l.path)) {
        return Operator::ZERO;
      }
      auto act = _C->try_act(s.g, strip_prefix(s.q, l.path));
      if (!act) {
        return Operator::ZERO;
      }
      auto const& B = _C->base();
      Path        p = _C->concat(s.p, act->first);
      Arrow       h = B.mul(act->second, l.g);
      if (p.size() > _N
          || (B.is_presented() && B.word_length(h) > _wordcap)) {
        return Operator::OUT;
      }
      auto idx = index_of(Label{p, h, false});
      if (!idx) {
        throw precondition_error("Fock image outside the basis");
      }
      return static_cast<int>(*idx);
    }

    int boundary_image(ISElement const& s, std::size_t j) const {
      auto const& l   = _labels[j];
      auto        img = germApply(*_C, _R, s, Point{l.path, l.cylinder}, _N);
      if (img.state == Defn::Undefined) {
        return Operator::ZERO;
      }
      if (img.state == Defn::Indeterminate) {
        return Operator::OUT;
      }
      auto idx = index_of(Label{img.point.path, Arrow{}, img.point.cylinder});
      if (!idx) {
        throw precondition_error("boundary image outside the basis");
      }
      return static_cast<int>(*idx);
    }

    Correspondence const*        _C;
    Kind                         _kind;
    std::size_t                  _N;
    std::size_t                  _wordcap;
    std::size_t                  _rho = 1;
    RegSet                       _R;
    std::vector<Label>           _labels;
    std::map<Label, std::size_t> _index;
  };

  ////////////////////////////////////////////////////////////////////////
  // Comparing operators on interior labels
  ////////////////////////////////////////////////////////////////////////

  struct Tally {
    std::size_t           instances      = 0;  // with at least one check
    std::size_t           vacuous        = 0;  // no interior label at all
    std::size_t           failed         = 0;
    std::size_t           checks         = 0;  // label-level comparisons
    std::size_t           skipped        = 0;  // OUT on the boundary
    std::set<std::size_t> defect_levels;       // mismatches outside
    std::map<std::string, std::size_t> by_code;

    void publish(Report& rep) const {
      rep.fact("instances", instances);
      rep.fact("vacuous_instances", vacuous);
      rep.fact("failed_instances", failed);
      rep.fact("label_checks", checks);
      rep.fact("indeterminate_skipped", skipped);
      std::string lv;
      for (auto k : defect_levels) {
        lv += (lv.empty() ? "" : ",") + std::to_string(k);
      }
      rep.fact("exterior_defect_levels", lv.empty() ? "none" : lv);
      for (auto const& [code, n] : by_code) {
        rep.fact("instances_" + code, n);
      }
    }
  };

  namespace detail {
    constexpr std::size_t max_witnesses = 12;

    // One relation instance.  Fock: truncated matrices compared on interior
    // labels.  Boundary: compared wherever neither side is OUT.
    inline bool compare_instance(Rep const& rep, Operator const& lhs,
                                 Operator const& rhs, std::size_t L,
                                 std::size_t W, std::string const& code,
                                 std::string const& what, Report& out,
                                 Tally& t) {
      if (lhs.size() != rep.size() || rhs.size() != rep.size()) {
        throw precondition_error("relation check: dimension mismatch");
      }
      std::size_t checks = 0;
      bool        ok     = true;
      std::string witness;
      for (std::size_t j = 0; j < rep.size(); ++j) {
        int a = lhs.col[j], b = rhs.col[j];
        if (rep.is_fock()) {
          a = a == Operator::OUT ? Operator::ZERO : a;
          b = b == Operator::OUT ? Operator::ZERO : b;
          if (!rep.interior(j, L, W)) {
            if (a != b) {
              t.defect_levels.insert(rep.label(j).level());
            }
            continue;
          }
        } else if (a == Operator::OUT || b == Operator::OUT) {
          ++t.skipped;
          continue;
        }
        ++checks;
        if (a != b && ok) {
          ok      = false;
          auto nm = [&](int c) {
            return c < 0 ? std::string("0") : rep.label_name(c);
          };
          witness = what + " at " + rep.label_name(j) + ": " + nm(a)
                    + " vs " + nm(b);
        }
      }
      t.checks += checks;
      if (checks == 0) {
        ++t.vacuous;
        return true;
      }
      ++t.instances;
      ++t.by_code[code];
      if (!ok) {
        if (t.failed++ < max_witnesses) {
          out.fail(code, "relation fails on an interior label", witness);
        }
      }
      return ok;
    }

    inline Operator zero_op(Rep const& rep) {
      return Operator{std::vector<int>(rep.size(), Operator::ZERO)};
    }
  }  // namespace detail

  ////////////////////////////////////////////////////////////////////////
  // Toeplitz relations
  ////////////////////////////////////////////////////////////////////////

  // Elements of X_k are pairs (p, g) with |p| = k and src(p) = rng(g).
  struct XElem {
    Path  p;
    Arrow g;
  };

  // Relation instances over G ⊔ X_1 ⊔ ... ⊔ X_N, with arrows of word length
  // <= wordcap / 2 for presented groups (so interior labels exist).
  inline Report checkToeplitzRelations(Rep const& rep) {
    Report      out(rep.is_fock() ? "Toeplitz relations (Fock)"
                                  : "Toeplitz relations (boundary)");
    auto const& C = rep.corr();
    auto const& B = C.base();
    auto const  N = rep.depth();
    auto        G = B.arrows_up_to(rep.is_fock() ? rep.wordcap() / 2 : 1);
    std::vector<XElem> X;
    for (std::size_t k = 1; k <= N; ++k) {
      for (auto const& p : C.pathsOfLength(k)) {
        for (auto const& g : G) {
          if (B.rng(g) == p.source) {
            X.push_back({p, g});
          }
        }
      }
    }
    auto x_elem = [&](Path const& p, Arrow const& g) {
      return ISElement::triple(C, p, g, Path{B.src(g), B.src(g), {}});
    };
    std::map<std::pair<Path, Arrow>, Operator> cache;
    auto x_op = [&](Path const& p, Arrow const& g) -> Operator const& {
      auto key = std::make_pair(p, g);
      auto it  = cache.find(key);
      if (it == cache.end()) {
        it = cache.emplace(key, rep.op(x_elem(p, g))).first;
      }
      return it->second;
    };
    std::map<Arrow, Operator> gcache;
    auto g_op = [&](Arrow const& g) -> Operator const& {
      auto it = gcache.find(g);
      if (it == gcache.end()) {
        it = gcache.emplace(g, rep.op(theta_arrow(C, g))).first;
      }
      return it->second;
    };
    Tally t;
    auto  zero = detail::zero_op(rep);

    // bullet 1, both in G
    for (auto const& g : G) {
      for (auto const& h : G) {
        auto gh  = B.compose(g, h);
        auto rhs = gh ? g_op(*gh) : zero;
        detail::compare_instance(rep, compose(g_op(g), g_op(h)), rhs, 0,
                                 rep.growth(g) + rep.growth(h), "product",
                                 "T_" + B.name(g) + " T_" + B.name(h), out,
                                 t);
      }
    }
    // bullet 1, G times X and X times G
    std::size_t missing = 0;
    for (auto const& g : G) {
      for (auto const& x : X) {
        auto   W    = rep.growth(g) + rep.growth(x.g);
        auto   name = C.path_name(x.p) + "|" + B.name(x.g);
        Operator rhs = zero;
        if (B.src(g) == x.p.range) {
          auto act = C.try_act(g, x.p);
          if (!act) {
            ++missing;
            continue;
          }
          rhs = x_op(act->first, B.mul(act->second, x.g));
        }
        detail::compare_instance(rep, compose(g_op(g), x_op(x.p, x.g)), rhs,
                                 x.p.size(), W, "product",
                                 "T_" + B.name(g) + " T_" + name, out, t);
        rhs = zero;
        if (B.src(x.g) == B.rng(g)) {
          rhs = x_op(x.p, B.mul(x.g, g));
        }
        detail::compare_instance(rep, compose(x_op(x.p, x.g), g_op(g)), rhs,
                                 x.p.size(), W, "product",
                                 "T_" + name + " T_" + B.name(g), out, t);
      }
    }
    // bullet 2
    for (auto const& g : G) {
      detail::compare_instance(rep, rep.adjoint_op(theta_arrow(C, g)),
                               g_op(B.inverse(g)), 0, rep.growth(g),
                               "adjoint", "T_" + B.name(g) + "^*", out, t);
    }
    // bullet 3 (same level; the bracket across levels is not defined)
    for (auto const& x : X) {
      auto xs = rep.adjoint_op(x_elem(x.p, x.g));
      for (auto const& y : X) {
        if (y.p.size() != x.p.size()) {
          continue;
        }
        Operator rhs = zero;
        if (x.p == y.p) {
          if (x.p.size() == 1) {
            auto h = C.bracketEdges({x.p.edges[0], x.g}, {y.p.edges[0], y.g});
            rhs    = g_op(*h);
          } else {
            rhs = g_op(B.mul(B.inverse(x.g), y.g));
          }
        }
        detail::compare_instance(
            rep, compose(xs, x_op(y.p, y.g)), rhs, x.p.size(),
            rep.growth(x.g) + rep.growth(y.g), "bracket",
            "T_" + C.path_name(x.p) + "|" + B.name(x.g) + "^* T_"
                + C.path_name(y.p) + "|" + B.name(y.g),
            out, t);
      }
    }
    // every generator is a partial permutation
    for (auto const& [k, m] : cache) {
      if (!is_partial_permutation(truncate(m))) {
        out.fail("partial-permutation", "generator is not a partial "
                                        "permutation",
                 C.path_name(k.first) + "|" + B.name(k.second));
      }
    }
    t.publish(out);
    out.fact("basis_size", rep.size());
    out.fact("depth", N);
    if (rep.is_fock() && B.is_presented()) {
      out.fact("wordcap", rep.wordcap());
    }
    if (missing > 0) {
      out.note(std::to_string(missing)
               + " instances skipped: cocycle table has no entry");
    }
    out.fact("defect_support",
             t.defect_levels.empty() ? "none" : "exterior labels only");
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Cuntz-Pimsner defect
  ////////////////////////////////////////////////////////////////////////

  struct CkDefect {
    int              vertex = 0;
    std::vector<int> diag;     // P_v - Σ T_x T_x^* on the diagonal
    std::vector<bool> unknown;  // boundary labels where an OUT intervened
    Report           report{"CP defect"};
  };

  inline CkDefect ckDefect(Rep const& rep, RegSet const& R, int v) {
    auto const& C = rep.corr();
    auto const& B = C.base();
    if (v < 0 || v >= B.object_count()) {
      throw precondition_error("ckDefect: no such vertex");
    }
    if (!R.at(v)) {
      throw precondition_error("ckDefect: vertex " + B.object_name(v)
                               + " is not in R");
    }
    CkDefect out;
    out.vertex = v;
    out.diag.assign(rep.size(), 0);
    out.unknown.assign(rep.size(), false);
    auto& r  = out.report;
    auto  Pv = rep.op(theta_arrow(C, B.unit(v)));
    for (std::size_t j = 0; j < rep.size(); ++j) {
      if (Pv.col[j] == static_cast<int>(j)) {
        out.diag[j] = 1;
      }
    }
    if (C.fiber(v).empty()) {
      r.note("degenerate vertex " + B.object_name(v)
             + ": empty fiber, the defect is P_v");
    }
    for (int x : C.fiber(v)) {
      auto     s = theta_edge(C, x);
      Operator proj;
      if (rep.is_fock()) {
        auto Tx = truncate(rep.op(s));
        proj    = compose(Tx, transpose(Tx));
      } else {
        proj = compose(rep.op(s), rep.op(isgAdjoint(C, s)));
      }
      for (std::size_t j = 0; j < rep.size(); ++j) {
        if (proj.col[j] == Operator::OUT) {
          out.unknown[j] = true;
        } else if (proj.col[j] == static_cast<int>(j)) {
          out.diag[j] -= 1;
        } else if (proj.col[j] >= 0) {
          r.fail("diagonal", "T_x T_x^* is not diagonal",
                 C.edge(x).name + " at " + rep.label_name(j));
        }
      }
    }
    // contract
    std::set<std::size_t> support;
    std::size_t           rank = 0;
    for (std::size_t j = 0; j < rep.size(); ++j) {
      auto const& l = rep.label(j);
      if (out.unknown[j]) {
        if (!rep.is_fock() && l.level() < rep.depth()) {
          r.fail("indeterminate", "defect unknown below the top level",
                 rep.label_name(j));
        }
        continue;
      }
      if (out.diag[j] != 0) {
        support.insert(l.level());
        ++rank;
      }
      if (rep.is_fock()) {
        int expect = l.level() == 0 && rep.vertex(j) == v ? 1 : 0;
        if (out.diag[j] != expect) {
          r.fail("defect", "Fock defect differs from the vacuum projection",
                 rep.label_name(j) + " has "
                     + std::to_string(out.diag[j]));
        }
      } else if (l.level() < rep.depth() && out.diag[j] != 0) {
        r.fail("defect", "boundary defect nonzero below the top level",
               rep.label_name(j) + " has " + std::to_string(out.diag[j]));
      }
    }
    std::string lv;
    for (auto k : support) {
      lv += (lv.empty() ? "" : ",") + std::to_string(k);
    }
    r.fact("vertex", B.object_name(v));
    r.fact("defect_rank", rank);
    r.fact("defect_support_levels", lv.empty() ? "none" : lv);
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Covariant representation conditions
  ////////////////////////////////////////////////////////////////////////

  // Checks, on a bounded set of elements (|p|, |q| <= cap, word length
  // <= wcap): T_1 = id, T_s T_t = T_{st}, domain and codomain projections,
  // the conjugation condition, idempotents, the bracket condition on
  // X-slices and φ-additivity over R.
  inline Report checkCovariantRep(Rep const& rep, RegSet const& R,
                                  std::size_t cap, std::size_t wcap) {
    Report      out(rep.is_fock() ? "covariant representation (Fock)"
                                  : "covariant representation (boundary)");
    auto const& C = rep.corr();
    auto const& B = C.base();
    if (R.size() != static_cast<std::size_t>(B.object_count())) {
      throw precondition_error("checkCovariantRep: R has the wrong size");
    }
    auto elems = bounded_elements(C, cap, wcap);
    std::vector<Operator> T, Ts;
    for (auto const& s : elems) {
      T.push_back(rep.op(s));
      Ts.push_back(rep.adjoint_op(s));
    }
    auto L_of = [](ISElement const& s) {
      return s.is_triple() ? s.p.size() + s.q.size() : 0;
    };
    auto W_of = [&](ISElement const& s) {
      return s.is_triple() ? rep.growth(s.g) : 0;
    };
    Tally t;

    detail::compare_instance(rep, rep.op(ISElement::one()), rep.identity(),
                             0, 0, "unit", "T_1", out, t);

    for (std::size_t a = 0; a < elems.size(); ++a) {
      auto const& s  = elems[a];
      auto        sn = element_name(C, s);
      // domain and codomain: T_s^* T_s = φ(Z(q)), T_s T_s^* = φ(Z(p))
      detail::compare_instance(rep, compose(Ts[a], T[a]), rep.phi(s.q),
                               L_of(s), 2 * W_of(s), "domain", sn, out, t);
      detail::compare_instance(rep, compose(T[a], Ts[a]), rep.phi(s.p),
                               L_of(s), 2 * W_of(s), "codomain", sn, out,
                               t);
      if (rep.is_fock()) {
        detail::compare_instance(rep, Ts[a],
                                 truncate(rep.op(isgAdjoint(C, s))),
                                 L_of(s), W_of(s), "adjoint", sn, out, t);
      }
      if (isgIsIdempotent(C, s)) {
        detail::compare_instance(rep, T[a], rep.phi(s.p), L_of(s), 0,
                                 "idempotent", sn, out, t);
      }
      // conjugation: T_s^* φ(Z(r1)) T_s φ(Z(r2)) = φ((1_{Z(r1)}∘θ_s) 1_{Z(r2)})
      for (std::size_t k = 0; k <= 1; ++k) {
        for (auto const& r1 : C.pathsOfLength(s.p.size() + k)) {
          if (!is_prefix(s.p, r1)) {
            continue;
          }
          for (auto const& r2 : C.pathsOfLength(s.q.size() + (1 - k))) {
            if (!is_prefix(s.q, r2)) {
              continue;
            }
            auto lhs = compose(compose(Ts[a], rep.phi(r1)),
                               compose(T[a], rep.phi(r2)));
            // direct: labels in Z(r2) whose θ_s-image lies in Z(r1)
            auto     p1 = rep.phi(r1), p2 = rep.phi(r2);
            Operator rhs{std::vector<int>(rep.size(), Operator::ZERO)};
            for (std::size_t j = 0; j < rep.size(); ++j) {
              int img = T[a].col[j];
              if (p2.col[j] == Operator::OUT || img == Operator::OUT
                  || (img >= 0 && p1.col[img] == Operator::OUT)) {
                rhs.col[j] = Operator::OUT;
              } else if (p2.col[j] >= 0 && img >= 0 && p1.col[img] >= 0) {
                rhs.col[j] = static_cast<int>(j);
              }
            }
            detail::compare_instance(rep, lhs, rhs, L_of(s) + 1,
                                     2 * W_of(s), "conjugation",
                                     sn + " with " + C.path_name(r1) + ", "
                                         + C.path_name(r2),
                                     out, t);
          }
        }
      }
    }

    // multiplicativity
    for (std::size_t a = 0; a < elems.size(); ++a) {
      for (std::size_t b = 0; b < elems.size(); ++b) {
        auto st = isgMultiply(C, elems[a], elems[b]);
        detail::compare_instance(
            rep, compose(T[a], T[b]), rep.op(st),
            L_of(elems[a]) + L_of(elems[b]),
            W_of(elems[a]) + W_of(elems[b]), "multiplicative",
            element_name(C, elems[a]) + " . " + element_name(C, elems[b]),
            out, t);
      }
    }

    // bracket on X-slices (redundant given the rest)
    auto G = B.arrows_up_to(std::min<std::size_t>(wcap, 1));
    std::vector<std::pair<int, Arrow>> X;
    for (int x = 0; x < C.edge_count(); ++x) {
      for (auto const& g : G) {
        if (B.rng(g) == C.edge(x).src) {
          X.emplace_back(x, g);
        }
      }
    }
    auto xs = [&](std::pair<int, Arrow> const& x) {
      return ISElement::triple(C, C.make_path({x.first}), x.second,
                               Path{B.src(x.second), B.src(x.second), {}});
    };
    for (auto const& a : X) {
      auto Ta = rep.adjoint_op(xs(a));
      for (auto const& b : X) {
        auto     h   = C.bracketEdges(a, b);
        Operator rhs = h ? rep.op(theta_arrow(C, *h))
                         : detail::zero_op(rep);
        detail::compare_instance(
            rep, compose(Ta, rep.op(xs(b))), rhs, 1,
            rep.growth(a.second) + rep.growth(b.second), "bracket",
            C.edge(a.first).name + "|" + B.name(a.second) + ", "
                + C.edge(b.first).name + "|" + B.name(b.second),
            out, t);
      }
    }

    // φ is a representation of C_0(Ω(R)): Z(v) = ⊔ Z(x) for v ∈ R
    for (int v = 0; v < B.object_count(); ++v) {
      if (!R[v]) {
        continue;
      }
      auto whole = rep.phi(Path{v, v, {}});
      std::vector<int> sum(rep.size(), 0);
      std::vector<bool> unknown(rep.size(), false);
      for (int x : C.fiber(v)) {
        auto px = rep.phi(C.make_path({x}));
        for (std::size_t j = 0; j < rep.size(); ++j) {
          if (px.col[j] == Operator::OUT) {
            unknown[j] = true;
          } else if (px.col[j] >= 0) {
            ++sum[j];
          }
        }
      }
      std::string witness;
      for (std::size_t j = 0; j < rep.size() && witness.empty(); ++j) {
        if (unknown[j] || whole.col[j] == Operator::OUT) {
          continue;
        }
        int w = whole.col[j] >= 0 ? 1 : 0;
        if (w != sum[j]) {
          witness = rep.label_name(j);
        }
      }
      ++t.instances;
      ++t.by_code["additivity"];
      if (!witness.empty()) {
        ++t.failed;
        out.fail("codomain",
                 "codomain of T_" + B.object_name(v)
                     + " is not the union of the codomains of T_x, "
                       "r(x) = "
                     + B.object_name(v),
                 witness);
      }
    }
    t.publish(out);
    out.fact("elements", elems.size());
    out.fact("basis_size", rep.size());
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Cross-check: germ family vs Cuntz-Pimsner generators
  ////////////////////////////////////////////////////////////////////////

  namespace detail {
    // A word in T_x, T_x^*, T_l (generator letters) evaluated on a label by
    // acting on exact paths and cylinders, then re-labelled.
    inline int eval_word(Rep const& rep, std::vector<Letter> const& w,
                         std::size_t j) {
      using K       = Letter::Kind;
      auto const& C = rep.corr();
      auto const& B = C.base();
      auto const& R = rep.regset();
      Path        pt  = rep.label(j).path;
      bool        cyl = rep.label(j).cylinder;
      for (auto it = w.rbegin(); it != w.rend(); ++it) {
        if (it->kind == K::E) {
          if (pt.range != C.edge(it->edge).src) {
            return Operator::ZERO;
          }
          pt = C.concat(C.make_path({it->edge}), pt);
        } else if (it->kind == K::Estar) {
          if (!pt.empty()) {
            if (pt.edges[0] != it->edge) {
              return Operator::ZERO;
            }
            pt = strip_prefix(C.make_path({it->edge}), pt);
            continue;
          }
          auto const& fib = C.fiber(pt.range);
          if (!cyl || std::find(fib.begin(), fib.end(), it->edge)
                          == fib.end()) {
            return Operator::ZERO;
          }
          if (!(R[pt.range] && fib.size() == 1)) {
            return Operator::OUT;  // Z(ε_v) is more than one cylinder
          }
          int s = C.edge(it->edge).src;
          pt    = Path{s, s, {}};
        } else {
          if (pt.range != B.src(it->g)) {
            return Operator::ZERO;
          }
          auto act = C.try_act(it->g, pt);
          if (!act) {
            return Operator::ZERO;
          }
          pt = act->first;
        }
      }
      auto lab = canonicalize(C, R, rep.depth(), Point{pt, cyl});
      if (!lab) {
        return Operator::OUT;
      }
      auto idx = rep.index_of(Label{lab->path, Arrow{}, lab->cylinder});
      return idx ? static_cast<int>(*idx) : Operator::OUT;
    }

    inline Operator eval_word_op(Rep const& rep, std::vector<Letter> const& w) {
      Operator out{std::vector<int>(rep.size())};
      for (std::size_t j = 0; j < rep.size(); ++j) {
        out.col[j] = eval_word(rep, w, j);
      }
      return out;
    }

    // T_p T_g T_q^* with g spelled in generator letters.
    inline std::vector<Letter> normal_word(Correspondence const& C,
                                           ISElement const&      s) {
      using K       = Letter::Kind;
      auto const& B = C.base();
      std::vector<Letter> w;
      for (int x : s.p.edges) {
        w.push_back({K::E, x, {}});
      }
      if (B.is_presented()) {
        for (auto l : s.g.code) {
          w.push_back({K::G, -1, B.letter(l)});
        }
        if (s.g.code.empty()) {
          w.push_back({K::G, -1, Arrow{}});
        }
      } else {
        w.push_back({K::G, -1, s.g});
      }
      for (auto it = s.q.edges.rbegin(); it != s.q.edges.rend(); ++it) {
        w.push_back({K::Estar, *it, {}});
      }
      return w;
    }

    // Rank over Q of 0/1 vectors.
    inline std::size_t rank_of(std::vector<std::vector<Rational>> rows) {
      std::size_t rank = 0;
      if (rows.empty()) {
        return 0;
      }
      std::size_t ncols = rows[0].size();
      for (std::size_t c = 0; c < ncols && rank < rows.size(); ++c) {
        std::size_t piv = rank;
        while (piv < rows.size() && rows[piv][c] == 0) {
          ++piv;
        }
        if (piv == rows.size()) {
          continue;
        }
        std::swap(rows[piv], rows[rank]);
        for (std::size_t r = 0; r < rows.size(); ++r) {
          if (r == rank || rows[r][c] == 0) {
            continue;
          }
          Rational f = rows[r][c] / rows[rank][c];
          for (std::size_t k = c; k < ncols; ++k) {
            rows[r][k] -= f * rows[rank][k];
          }
        }
        ++rank;
      }
      return rank;
    }

    inline std::vector<Rational> flatten(Operator const& A) {
      std::vector<Rational> v(A.size() * A.size(), 0);
      for (std::size_t j = 0; j < A.size(); ++j) {
        if (A.col[j] >= 0) {
          v[A.col[j] * A.size() + j] = 1;
        }
      }
      return v;
    }

    inline bool fully_defined(Operator const& A) {
      return std::none_of(A.col.begin(), A.col.end(),
                          [](int c) { return c == Operator::OUT; });
    }
  }  // namespace detail

  // Builds the boundary representation twice: from germs of bounded
  // elements (slices of the model) and from words in the generators T_x,
  // T_x^*, T_g.  Each germ operator must equal its generator word, every
  // generator word of length <= 3 must lie in the span of the germ family,
  // and every germ whose normal word has length <= 3 must lie in the span of
  // the words.  cap >= 3 so that three-letter words are covered.
  inline Report crossCheckMainTheorem(Correspondence const& C,
                                      RegSet const& R, std::size_t N,
                                      std::size_t cap = 3,
                                      std::size_t wcap = 1) {
    using K = Letter::Kind;
    if (cap < 3) {
      throw precondition_error("crossCheckMainTheorem: cap must be >= 3");
    }
    Report      out("cross-check: germ family vs CP generators");
    auto const& B   = C.base();
    auto        rep = Rep::boundary(C, R, N);

    std::vector<Operator> germ, germ_short;
    std::size_t           compared = 0, skipped = 0;
    for (auto const& s : bounded_elements(C, cap, wcap)) {
      auto A = rep.op(s);
      auto W = detail::eval_word_op(rep, detail::normal_word(C, s));
      for (std::size_t j = 0; j < rep.size(); ++j) {
        if (A.col[j] == Operator::OUT || W.col[j] == Operator::OUT) {
          ++skipped;
          continue;
        }
        ++compared;
        if (A.col[j] != W.col[j]) {
          out.fail("germ-vs-word", "germ operator differs from its "
                                   "generator word",
                   element_name(C, s) + " at " + rep.label_name(j));
          break;
        }
      }
      if (detail::fully_defined(A)) {
        germ.push_back(A);
        if (detail::normal_word(C, s).size() <= 3) {
          germ_short.push_back(A);
        }
      }
    }

    // generator letters
    std::vector<Letter> letters;
    for (int x = 0; x < C.edge_count(); ++x) {
      letters.push_back({K::E, x, {}});
      letters.push_back({K::Estar, x, {}});
    }
    for (auto const& g : B.generators()) {
      letters.push_back({K::G, -1, g});
      if (B.is_presented()) {
        letters.push_back({K::G, -1, B.inverse(g)});
      }
    }
    if (B.is_presented()) {
      letters.push_back({K::G, -1, Arrow{}});
    } else {
      for (int v = 0; v < B.object_count(); ++v) {
        letters.push_back({K::G, -1, B.unit(v)});
      }
    }
    std::vector<std::vector<Letter>> words{{}};
    std::vector<Operator>            cp;
    std::size_t                      partial_words = 0;
    for (std::size_t len = 1; len <= 3; ++len) {
      std::vector<std::vector<Letter>> next;
      for (auto const& w : words) {
        if (w.size() + 1 != len) {
          continue;
        }
        for (auto const& l : letters) {
          auto v = w;
          v.push_back(l);
          next.push_back(v);
        }
      }
      for (auto const& w : next) {
        auto A = detail::eval_word_op(rep, w);
        if (detail::fully_defined(A)) {
          cp.push_back(A);
        } else {
          ++partial_words;
        }
      }
      words.insert(words.end(), next.begin(), next.end());
    }

    std::vector<std::vector<Rational>> rows;
    for (auto const& A : germ) {
      rows.push_back(detail::flatten(A));
    }
    auto rank_germ = detail::rank_of(rows);
    std::vector<std::vector<Rational>> cprows;
    for (auto const& A : cp) {
      cprows.push_back(detail::flatten(A));
      rows.push_back(cprows.back());
    }
    auto rank_cp    = detail::rank_of(cprows);
    auto rank_union = detail::rank_of(rows);
    if (rank_union != rank_germ) {
      out.fail("span", "a generator word is not in the span of the germ "
                       "family",
               "rank " + std::to_string(rank_germ) + " vs "
                   + std::to_string(rank_union));
    }
    auto both = cprows;
    for (auto const& A : germ_short) {
      both.push_back(detail::flatten(A));
    }
    auto rank_back = detail::rank_of(both);
    if (rank_back != rank_cp) {
      out.fail("span", "a short germ is not in the span of the generator "
                       "words",
               "rank " + std::to_string(rank_cp) + " vs "
                   + std::to_string(rank_back));
    }
    out.fact("basis_size", rep.size());
    out.fact("germ_operators", germ.size());
    out.fact("word_operators", cp.size());
    out.fact("words_with_indeterminate_entries", partial_words);
    out.fact("entries_compared", compared);
    out.fact("entries_skipped", skipped);
    out.fact("rank_germ_family", rank_germ);
    out.fact("rank_generator_words", rank_cp);
    out.fact("rank_union", rank_union);
    if (compared == 0) {
      out.fail("vacuous", "no germ entry could be compared at this depth");
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Sparse export
  ////////////////////////////////////////////////////////////////////////

  // `matrix name= dim=`, then `label index= name=` for the basis, then one
  // `entry row= col= value=1` per nonzero (OUT reads as 0).
  inline std::vector<Record> export_triplets(Rep const& rep,
                                             Operator const&    A,
                                             std::string const& name) {
    std::vector<Record> out;
    out.push_back(Record{"matrix", {}}.add("name", name).add("dim",
                                                             rep.size()));
    for (std::size_t j = 0; j < rep.size(); ++j) {
      out.push_back(Record{"label", {}}.add("index", j).add(
          "name", rep.label_name(j)));
    }
    for (std::size_t j = 0; j < A.size(); ++j) {
      if (A.col[j] >= 0) {
        out.push_back(Record{"entry", {}}
                          .add("row", A.col[j])
                          .add("col", j)
                          .add("value", 1));
      }
    }
    return out;
  }

}  // namespace gcorr
