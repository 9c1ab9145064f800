#pragma once

// The groupoid model Ω(R) ⋊ I(G,X) at finite depth: germs, a bounded arrow
// enumeration, restriction to R and simplicity diagnostics.

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
#include "gcorr/pathspace.hpp"
#include "gcorr/report.hpp"

namespace gcorr {

  enum class Defn { Defined, Undefined, Indeterminate };

  struct GermImage {
    Defn  state = Defn::Undefined;
    Point point;
  };

  // θ_s applied to a label ω.  With a depth the image is re-labelled in
  // BoundaryTrunc(depth, R); an image that is no single label is
  // Indeterminate, as is a domain that cuts through Z(ω).
  inline GermImage germApply(Correspondence const& C, RegSet const& R,
                             ISElement const& s, Point const& w,
                             std::optional<std::size_t> depth = std::nullopt) {
    if (s.is_zero()) {
      return {Defn::Undefined, {}};
    }
    if (s.is_one()) {
      return {Defn::Defined, w};
    }
    auto finish = [&](Point img) -> GermImage {
      if (!depth) {
        return {Defn::Defined, img};
      }
      auto lab = canonicalize(C, R, *depth, img);
      if (!lab) {
        return {Defn::Indeterminate, {}};
      }
      return {Defn::Defined, *lab};
    };
    if (is_prefix(s.q, w.path)) {
      auto act = C.try_act(s.g, strip_prefix(s.q, w.path));
      if (!act) {
        return {Defn::Undefined, {}};
      }
      return finish(Point{C.concat(s.p, act->first), w.cylinder});
    }
    if (w.cylinder && is_prefix(w.path, s.q)) {
      // q is longer than the label: fine only if Z(q) = Z(ω)
      if (depth) {
        auto lab = canonicalize(C, R, *depth, Point{s.q, true});
        if (lab && *lab == w) {
          return finish(Point{s.p, true});
        }
      }
      return {Defn::Indeterminate, {}};
    }
    return {Defn::Undefined, {}};
  }

  struct Verdict {
    enum class Kind { Equal, Distinct, Unknown };
    Kind        kind  = Kind::Unknown;
    std::size_t depth = 0;

    [[nodiscard]] std::string str() const {
      switch (kind) {
        case Kind::Equal:
          return "Equal";
        case Kind::Distinct:
          return "Distinct";
        default:
          return "UnknownAtDepth(" + std::to_string(depth) + ")";
      }
    }
    bool operator==(Verdict const&) const = default;
  };

  // s·(ω, 1, ω) for s defined on Z(ω) with q a prefix of ω.  Two germs at ω
  // agree iff s·e = t·e for an idempotent e = (r,1,r) with r a prefix of ω,
  // and then they also agree for r = ω; so this product is a complete
  // invariant of the germ class.
  inline std::optional<ISElement> germ_key(Correspondence const& C,
                                           ISElement const& s, Point const& w) {
    ISElement e = ISElement::triple(C, w.path, C.base().unit(w.path.source),
                                    w.path);
    if (s.is_one()) {
      return e;
    }
    if (!s.is_triple() || !is_prefix(s.q, w.path)) {
      return std::nullopt;
    }
    auto k = isgMultiply(C, s, e);
    if (k.is_zero()) {
      return std::nullopt;
    }
    return k;
  }

  inline Verdict germEquals(Correspondence const& C, RegSet const& R,
                            ISElement const& s, ISElement const& t,
                            Point const& w) {
    auto ds = germApply(C, R, s, w);
    auto dt = germApply(C, R, t, w);
    if (ds.state == Defn::Undefined || dt.state == Defn::Undefined) {
      throw precondition_error("germEquals: element not defined at the point");
    }
    Verdict unknown{Verdict::Kind::Unknown, w.path.size()};
    auto    ks = germ_key(C, s, w);
    auto    kt = germ_key(C, t, w);
    if (!ks || !kt) {
      return unknown;  // domain strictly inside Z(ω)
    }
    if (*ks == *kt) {
      return {Verdict::Kind::Equal, 0};
    }
    // the keys are (image, restriction, ω); images of equal germs agree and
    // have equal degree |p| - |q|
    if (!(ks->p == kt->p)) {
      return {Verdict::Kind::Distinct, 0};
    }
    if (!w.cylinder) {
      return {Verdict::Kind::Distinct, 0};  // every prefix of ω was tried
    }
    return unknown;
  }

  ////////////////////////////////////////////////////////////////////////
  // Arrow enumeration
  ////////////////////////////////////////////////////////////////////////

  struct GermClass {
    ISElement   rep;
    ISElement   key;
    std::size_t source  = 0;
    std::size_t range   = 0;
    std::size_t members = 0;
    bool        flagged = false;  // an Unknown verdict against another class
  };

  struct ArrowTable {
    BoundaryTrunc                                     objects;
    std::vector<GermClass>                            arrows;
    std::map<std::pair<std::size_t, ISElement>, std::size_t> by_key;
    std::vector<std::optional<std::size_t>>           unit_of;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> compose;
    std::size_t                                       unresolved      = 0;
    std::size_t                                       excluded_domain = 0;
    std::size_t                                       excluded_range  = 0;
    std::size_t                                       unknown_pairs   = 0;
    Report                                            report{"model"};

    [[nodiscard]] std::optional<std::size_t> find(std::size_t      source,
                                                  ISElement const& key) const {
      auto it = by_key.find({source, key});
      if (it == by_key.end()) {
        return std::nullopt;
      }
      return it->second;
    }
  };

  // The class of [s, ω] if it was enumerated.
  inline std::optional<std::size_t> find_germ(Correspondence const& C,
                                              ArrowTable const&     T,
                                              ISElement const&      s,
                                              std::size_t           source) {
    auto k = germ_key(C, s, T.objects.points[source]);
    if (!k) {
      return std::nullopt;
    }
    return T.find(source, *k);
  }

  inline ArrowTable enumerateArrows(Correspondence const& C, RegSet const& R,
                                    std::size_t depth, std::size_t cap,
                                    std::size_t wordcap,
                                    std::size_t assoc_budget = 5'000'000) {
    ArrowTable T;
    T.objects          = buildBoundary(C, R, depth);
    auto const& B      = C.base();
    auto const& labels = T.objects.points;
    auto        elems  = bounded_elements(C, cap, wordcap);

    for (std::size_t w = 0; w < labels.size(); ++w) {
      for (auto const& s : elems) {
        auto img = germApply(C, R, s, labels[w], depth);
        if (img.state == Defn::Undefined) {
          continue;
        }
        if (img.state == Defn::Indeterminate) {
          if (is_prefix(s.q, labels[w].path)) {
            ++T.excluded_range;
          } else {
            ++T.excluded_domain;
          }
          continue;
        }
        auto key = germ_key(C, s, labels[w]);
        if (!key) {
          ++T.excluded_domain;
          continue;
        }
        auto it = T.by_key.find({w, *key});
        if (it != T.by_key.end()) {
          ++T.arrows[it->second].members;
          continue;
        }
        auto r = T.objects.index_of(img.point);
        if (!r) {
          ++T.excluded_range;
          continue;
        }
        T.by_key.emplace(std::make_pair(w, *key), T.arrows.size());
        T.arrows.push_back(GermClass{s, *key, w, *r, 1, false});
      }
    }

    // Unknown verdicts: same source, same image, different key.
    {
      std::map<std::pair<std::size_t, Path>, std::vector<std::size_t>> buckets;
      for (std::size_t a = 0; a < T.arrows.size(); ++a) {
        buckets[{T.arrows[a].source, T.arrows[a].key.p}].push_back(a);
      }
      for (auto const& [k, v] : buckets) {
        if (v.size() < 2 || !T.objects.points[k.first].cylinder) {
          continue;
        }
        T.unknown_pairs += v.size() * (v.size() - 1) / 2;
        for (auto a : v) {
          T.arrows[a].flagged = true;
        }
      }
    }

    T.unit_of.assign(labels.size(), std::nullopt);
    for (std::size_t w = 0; w < labels.size(); ++w) {
      T.unit_of[w] = find_germ(C, T, ISElement::one(), w);
      if (!T.unit_of[w]) {
        T.report.fail("unit", "no unit arrow at object",
                      point_name(C, labels[w]));
      }
    }

    // arrows by range, for composable pairs
    std::vector<std::vector<std::size_t>> into(labels.size());
    std::vector<std::vector<std::size_t>> outof(labels.size());
    for (std::size_t a = 0; a < T.arrows.size(); ++a) {
      into[T.arrows[a].range].push_back(a);
      outof[T.arrows[a].source].push_back(a);
    }

    // [s, θ_t(ω)]·[t, ω] = [st, ω]
    for (std::size_t b = 0; b < T.arrows.size(); ++b) {
      auto const& gb = T.arrows[b];
      for (auto a : outof[gb.range]) {
        auto st = isgMultiply(C, T.arrows[a].rep, gb.rep);
        auto ab = find_germ(C, T, st, gb.source);
        if (!ab) {
          ++T.unresolved;
          continue;
        }
        T.compose[{a, b}] = *ab;
        if (T.arrows[*ab].range != T.arrows[a].range) {
          T.report.fail("composition", "range of a product is wrong",
                        element_name(C, T.arrows[a].rep) + " . "
                            + element_name(C, gb.rep));
        }
      }
    }

    // units are neutral
    for (std::size_t a = 0; a < T.arrows.size(); ++a) {
      auto const& g  = T.arrows[a];
      auto        ur = T.unit_of[g.range];
      auto        us = T.unit_of[g.source];
      if (ur) {
        auto it = T.compose.find({*ur, a});
        if (it == T.compose.end() || it->second != a) {
          T.report.fail("unit", "left unit law fails",
                        element_name(C, g.rep) + " at "
                            + point_name(C, labels[g.source]));
        }
      }
      if (us) {
        auto it = T.compose.find({a, *us});
        if (it == T.compose.end() || it->second != a) {
          T.report.fail("unit", "right unit law fails",
                        element_name(C, g.rep) + " at "
                            + point_name(C, labels[g.source]));
        }
      }
    }

    // the inverse of [s, ω] is [s^*, θ_s(ω)]
    std::size_t inverses_missing = 0;
    for (std::size_t a = 0; a < T.arrows.size(); ++a) {
      auto const& g   = T.arrows[a];
      auto        inv = find_germ(C, T, isgAdjoint(C, g.rep), g.range);
      if (!inv) {
        ++inverses_missing;
        continue;
      }
      auto l = T.compose.find({*inv, a});
      auto r = T.compose.find({a, *inv});
      if (l == T.compose.end() || !T.unit_of[g.source]
          || l->second != *T.unit_of[g.source] || r == T.compose.end()
          || !T.unit_of[g.range] || r->second != *T.unit_of[g.range]) {
        T.report.fail("inverse", "[s^*, θ_s(ω)] is not an inverse",
                      element_name(C, g.rep) + " at "
                          + point_name(C, labels[g.source]));
      }
    }

    // associativity on every triple whose products were resolved
    std::size_t triples = 0;
    bool        budget  = false;
    for (auto const& [bc, c_ab] : T.compose) {
      auto [b, c] = bc;
      auto bcv    = c_ab;
      for (auto a : outof[T.arrows[b].range]) {
        auto ab = T.compose.find({a, b});
        auto a_bc = T.compose.find({a, bcv});
        if (ab == T.compose.end() || a_bc == T.compose.end()) {
          continue;
        }
        auto ab_c = T.compose.find({ab->second, c});
        if (ab_c == T.compose.end()) {
          continue;
        }
        if (++triples > assoc_budget) {
          budget = true;
          break;
        }
        if (ab_c->second != a_bc->second) {
          T.report.fail("associativity", "(ab)c != a(bc)",
                        element_name(C, T.arrows[a].rep) + ", "
                            + element_name(C, T.arrows[b].rep) + ", "
                            + element_name(C, T.arrows[c].rep));
        }
      }
      if (budget) {
        break;
      }
    }
    (void) B;
    T.report.fact("objects", labels.size());
    T.report.fact("arrows", T.arrows.size());
    T.report.fact("composable_resolved", T.compose.size());
    T.report.fact("composable_unresolved", T.unresolved);
    T.report.fact("inverse_beyond_caps", inverses_missing);
    T.report.fact("associativity_triples", budget ? assoc_budget : triples);
    T.report.fact("excluded_domain", T.excluded_domain);
    T.report.fact("excluded_range", T.excluded_range);
    T.report.fact("unknown_pairs", T.unknown_pairs);
    if (budget) {
      T.report.note("associativity stopped at the triple budget");
    }
    return T;
  }

  ////////////////////////////////////////////////////////////////////////
  // Restriction to R inside Ω_{[0,∞)} ⋊ I
  ////////////////////////////////////////////////////////////////////////

  // R ⊆ G^0 sits in Ω_{[0,∞)} as the empty paths.  (It never meets Ω(R):
  // a vertex in R is not a point there.)
  inline Report restrictToR(Correspondence const& C, RegSet const& R,
                            std::size_t cap, std::size_t wordcap) {
    Report      rep("restriction to R");
    auto const& B = C.base();
    std::vector<int> members;
    for (int v = 0; v < B.object_count(); ++v) {
      if (R[v]) {
        members.push_back(v);
      }
    }
    rep.fact("R_size", members.size());
    rep.fact("R_meets_Omega_R", "no");
    if (members.empty()) {
      rep.note("R is empty: vacuous pass");
      return rep;
    }
    auto chk = check_regset(C, R);
    if (!chk.ok()) {
      rep.absorb(chk);
      return rep;
    }
    auto elems = bounded_elements(C, cap, wordcap);

    // germs at ε_v: the key s·(ε_v,1,ε_v) is s itself
    std::set<Path>               orbit;
    std::map<ISElement, Arrow>   pure;  // germ key -> arrow of G_R
    std::size_t                  r_to_r = 0;
    for (int v : members) {
      Point pt{Path{v, v, {}}, false};
      for (auto const& s : elems) {
        auto img = theta_exact(C, s, pt.path);
        if (!img) {
          continue;
        }
        orbit.insert(*img);
        if (!img->empty() || !R[img->range]) {
          continue;
        }
        ++r_to_r;
        auto key = germ_key(C, s, pt);
        if (!s.p.empty() || !s.q.empty() || !key) {
          rep.fail("pure-G", "germ between points of R is not pure-G",
                   element_name(C, s));
          continue;
        }
        pure.emplace(*key, s.g);
      }
    }
    // bijection with G_R (arrows with source in R, within the word cap)
    std::set<Arrow> gr;
    for (auto const& g : B.arrows_up_to(wordcap)) {
      if (R[B.src(g)]) {
        gr.insert(g);
        if (!R[B.rng(g)]) {
          rep.fail("invariance", "arrow leaves R", B.name(g));
        }
      }
    }
    std::set<Arrow> hit;
    for (auto const& [k, g] : pure) {
      if (!hit.insert(g).second) {
        rep.fail("bijection", "two germ classes for one arrow", B.name(g));
      }
    }
    if (hit != gr) {
      rep.fail("bijection", "germ classes do not match G_R",
               std::to_string(hit.size()) + " classes vs "
                   + std::to_string(gr.size()) + " arrows");
    }
    // composition matches G_R
    std::size_t comps = 0;
    for (auto const& g : gr) {
      for (auto const& h : gr) {
        auto gh = B.compose(g, h);
        auto st = isgMultiply(C, theta_arrow(C, g), theta_arrow(C, h));
        if (!gh) {
          if (!st.is_zero()) {
            rep.fail("composition", "non-composable arrows multiply",
                     B.name(g) + ", " + B.name(h));
          }
          continue;
        }
        if (B.word_length(*gh) > wordcap) {
          continue;
        }
        ++comps;
        if (!(st == theta_arrow(C, *gh))) {
          rep.fail("composition", "germ product differs from G_R product",
                   B.name(g) + ", " + B.name(h));
        }
      }
    }
    // orbit M·R = paths with source in R (length <= cap)
    std::set<Path> expect;
    for (std::size_t k = 0; k <= cap; ++k) {
      for (auto const& p : C.pathsOfLength(k)) {
        if (R[p.source]) {
          expect.insert(p);
        }
      }
    }
    if (orbit != expect) {
      std::string w;
      for (auto const& p : orbit) {
        if (!expect.count(p)) {
          w = "extra " + C.path_name(p);
          break;
        }
      }
      for (auto const& p : expect) {
        if (w.empty() && !orbit.count(p)) {
          w = "missing " + C.path_name(p);
        }
      }
      rep.fail("orbit", "orbit of R differs from the R-sourced paths", w);
    }
    rep.fact("germs_R_to_R", r_to_r);
    rep.fact("G_R_arrows", gr.size());
    rep.fact("composition_checks", comps);
    rep.fact("orbit_size", orbit.size());
    return rep;
  }

  ////////////////////////////////////////////////////////////////////////
  // Diagnostics
  ////////////////////////////////////////////////////////////////////////

  namespace detail {
    // Vertices from which some point of Ω(R) starts: non-R vertices, cycle
    // vertices, and everything that reaches them along edges.
    inline std::vector<bool> alive_vertices(Correspondence const& C,
                                            RegSet const&         R) {
      auto const n = C.base().object_count();
      // u -> w when some edge has range u and source w
      std::vector<bool> alive(n, false);
      for (int v = 0; v < n; ++v) {
        alive[v] = !R[v];
      }
      // cycle vertices: v reaches itself
      for (int v = 0; v < n; ++v) {
        std::vector<bool> seen(n, false);
        std::vector<int>  stack;
        for (int x : C.fiber(v)) {
          stack.push_back(C.edge(x).src);
        }
        while (!stack.empty()) {
          int u = stack.back();
          stack.pop_back();
          if (seen[u]) {
            continue;
          }
          seen[u] = true;
          for (int x : C.fiber(u)) {
            stack.push_back(C.edge(x).src);
          }
        }
        if (seen[v]) {
          alive[v] = true;
        }
      }
      bool changed = true;
      while (changed) {
        changed = false;
        for (auto const& e : C.edges()) {
          if (alive[e.src] && !alive[e.rng]) {
            alive[e.rng] = true;
            changed      = true;
          }
        }
      }
      return alive;
    }

    // Down(u): vertices w with a path from range u to source w.
    inline std::vector<bool> down_set(Correspondence const& C, int u) {
      std::vector<bool> seen(C.base().object_count(), false);
      std::vector<int>  stack{u};
      while (!stack.empty()) {
        int w = stack.back();
        stack.pop_back();
        if (seen[w]) {
          continue;
        }
        seen[w] = true;
        for (int x : C.fiber(w)) {
          stack.push_back(C.edge(x).src);
        }
      }
      return seen;
    }

    inline bool has_cycle_within(Correspondence const&    C,
                                 std::vector<bool> const& in) {
      auto const n = C.base().object_count();
      // Kahn on the induced subgraph
      std::vector<int> indeg(n, 0);
      for (auto const& e : C.edges()) {
        if (in[e.rng] && in[e.src]) {
          ++indeg[e.src];
        }
      }
      std::vector<int> queue;
      int              count = 0, total = 0;
      for (int v = 0; v < n; ++v) {
        if (in[v]) {
          ++total;
          if (indeg[v] == 0) {
            queue.push_back(v);
          }
        }
      }
      while (!queue.empty()) {
        int v = queue.back();
        queue.pop_back();
        ++count;
        for (int x : C.fiber(v)) {
          int w = C.edge(x).src;
          if (in[w] && --indeg[w] == 0) {
            queue.push_back(w);
          }
        }
      }
      return count != total;
    }
  }  // namespace detail

  struct Diagnostics {
    std::string              hausdorff;
    std::string              conditionL;
    std::string              cofinal;
    std::vector<std::string> witnesses;
    std::vector<std::string> effectiveness_candidates;
    Report                   report{"diagnostics"};
  };

  inline Diagnostics diagnose(Correspondence const& C, RegSet const& R,
                              std::size_t depth = 6, std::size_t wordcap = 4) {
    Diagnostics out;
    auto const& B = C.base();
    auto const  n = B.object_count();

    // Cofinality: for every u with a point below it, every point meets
    // Down(u), i.e. V \ Down(u) lies in R and carries no cycle.
    auto alive   = detail::alive_vertices(C, R);
    bool cofinal = true;
    for (int u = 0; u < n && cofinal; ++u) {
      if (!alive[u]) {
        continue;
      }
      auto              down = detail::down_set(C, u);
      std::vector<bool> rest(n);
      for (int w = 0; w < n; ++w) {
        rest[w] = !down[w];
        if (rest[w] && !R[w]) {
          cofinal = false;
          out.witnesses.push_back("cofinality: the point at "
                                  + B.object_name(w) + " never reaches "
                                  + B.object_name(u));
          break;
        }
      }
      if (cofinal && detail::has_cycle_within(C, rest)) {
        cofinal = false;
        out.witnesses.push_back("cofinality: a cycle avoids "
                                + B.object_name(u));
      }
    }

    // Condition L relative to R: a cycle through R-vertices with a single
    // incoming edge each has no exit.
    std::string cycle_witness;
    for (int v = 0; v < n && cycle_witness.empty(); ++v) {
      int              u = v;
      std::vector<int> seq;
      for (int step = 0; step <= n; ++step) {
        if (!R[u] || C.fiber(u).size() != 1) {
          break;
        }
        int x = C.fiber(u)[0];
        seq.push_back(x);
        u = C.edge(x).src;
        if (u == v) {
          cycle_witness = C.path_name(C.make_path(seq));
          break;
        }
      }
    }

    if (B.trivial()) {
      out.hausdorff  = "yes";
      out.conditionL = cycle_witness.empty() ? "holds" : "fails";
      out.cofinal    = cofinal ? "yes" : "no";
      if (!cycle_witness.empty()) {
        out.witnesses.push_back("cycle without exit: " + cycle_witness);
      }
    } else {
      out.conditionL = "n/a";
      out.cofinal    = cofinal ? "yes" : "unknown";
      out.hausdorff  = "unknown(" + std::to_string(depth) + ")";
      // g fixes Z(ω) pointwise up to the depth, its germ at ω stays
      // Unknown, yet below every shorter prefix some germ of g is trivial.
      auto labels = buildBoundary(C, R, depth).points;
      for (auto const& g : B.arrows_up_to(wordcap)) {
        if (B.is_unit(g)) {
          continue;
        }
        auto s = theta_arrow(C, g);
        for (auto const& w : labels) {
          if (w.path.range != B.src(g)) {
            continue;
          }
          auto img = germApply(C, R, s, w);
          if (img.state != Defn::Defined || !(img.point == w)) {
            continue;
          }
          auto v = germEquals(C, R, s, ISElement::one(), w);
          if (v.kind != Verdict::Kind::Unknown) {
            continue;
          }
          bool limit = w.path.size() > 0;
          for (std::size_t k = 0; k < w.path.size() && limit; ++k) {
            auto pre   = C.prefix(w.path, k);
            bool found = false;
            for (auto const& w2 : labels) {
              if (!is_prefix(pre, w2.path) || w2.path.range != B.src(g)) {
                continue;
              }
              if (germApply(C, R, s, w2).state == Defn::Defined
                  && germEquals(C, R, s, ISElement::one(), w2).kind
                         == Verdict::Kind::Equal) {
                found = true;
                break;
              }
            }
            limit = found;
          }
          if (limit) {
            out.witnesses.push_back("non-Hausdorff candidate: " + B.name(g)
                                    + " at " + point_name(C, w));
          } else {
            out.effectiveness_candidates.push_back(
                B.name(g) + " fixes " + point_name(C, w)
                + " with germ " + v.str());
          }
        }
      }
    }
    auto& rep = out.report;
    rep.fact("hausdorff", out.hausdorff);
    rep.fact("conditionL", out.conditionL);
    rep.fact("cofinal", out.cofinal);
    rep.fact("witness_count", out.witnesses.size());
    for (auto const& w : out.witnesses) {
      rep.note(w);
    }
    rep.fact("effectiveness_candidates", out.effectiveness_candidates.size());
    return out;
  }

}  // namespace gcorr
