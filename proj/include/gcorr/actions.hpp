#pragma once

// Actions of (G, X, R) on finite sets Y: a G-action table and, per edge e of
// the fundamental domain, a partial injection μ_e from Y_{src(e)} to
// Y_{rng(e)}.  The X-action is (e, g)·y = μ_e(g·y).

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

  struct FiniteAction {
    std::string              name;
    std::vector<std::string> points;
    std::vector<int>         fiber;  // r_Y
    // g·y for finite-base arrows, or for generator letters of a presented
    // group; missing unit entries act trivially
    std::map<std::pair<Arrow, int>, int> gact;
    std::vector<std::map<int, int>>      mu;  // per edge: y -> μ_e(y)

    [[nodiscard]] std::size_t size() const noexcept {
      return points.size();
    }
    [[nodiscard]] int point_index(std::string const& p) const {
      for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i] == p) {
          return static_cast<int>(i);
        }
      }
      throw input_error("unknown point '" + p + "' in action " + name);
    }
    bool operator==(FiniteAction const&) const = default;
  };

  namespace detail {
    inline std::optional<int> act_letter_on(FiniteAction const& A, int32_t l,
                                            int y) {
      if (l > 0) {
        auto it = A.gact.find({Arrow{{l}}, y});
        if (it == A.gact.end()) {
          return std::nullopt;
        }
        return it->second;
      }
      std::optional<int> found;
      for (auto const& [k, v] : A.gact) {
        if (k.first.code == std::vector<int32_t>{-l} && v == y) {
          if (found) {
            return std::nullopt;
          }
          found = k.second;
        }
      }
      return found;
    }
  }  // namespace detail

  // g·y, nullopt if the table has no answer.
  inline std::optional<int> act_on(Correspondence const& C,
                                   FiniteAction const& A, Arrow const& g,
                                   int y) {
    auto const& B = C.base();
    if (B.src(g) != A.fiber.at(y)) {
      throw precondition_error("act_on: src(g) != r(y)");
    }
    if (!B.is_presented()) {
      auto it = A.gact.find({g, y});
      if (it != A.gact.end()) {
        return it->second;
      }
      if (B.is_unit(g)) {
        return y;
      }
      return std::nullopt;
    }
    int cur = y;
    for (auto it = g.code.rbegin(); it != g.code.rend(); ++it) {
      auto n = detail::act_letter_on(A, *it, cur);
      if (!n) {
        return std::nullopt;
      }
      cur = *n;
    }
    return cur;
  }

  inline std::optional<int> mu_apply(FiniteAction const& A, int e, int y) {
    auto const& m  = A.mu.at(e);
    auto        it = m.find(y);
    if (it == m.end()) {
      return std::nullopt;
    }
    return it->second;
  }

  // X·Y as a membership mask.
  inline std::vector<bool> image_mask(FiniteAction const& A) {
    std::vector<bool> out(A.size(), false);
    for (auto const& m : A.mu) {
      for (auto const& [y, z] : m) {
        out.at(z) = true;
      }
    }
    return out;
  }

  inline bool mu_total(Correspondence const& C, FiniteAction const& A) {
    for (int e = 0; e < C.edge_count(); ++e) {
      for (std::size_t y = 0; y < A.size(); ++y) {
        if (A.fiber[y] == C.edge(e).src && !A.mu[e].count(int(y))) {
          return false;
        }
      }
    }
    return true;
  }

  // θ_s on Y for s = (p, g, q): y ↦ μ_p(g·μ_q^{-1}(y)).  -1 where undefined.
  inline std::vector<int> theta_on(Correspondence const& C,
                                   FiniteAction const& A, ISElement const& s) {
    std::vector<int> out(A.size(), -1);
    if (s.is_zero()) {
      return out;
    }
    for (std::size_t y0 = 0; y0 < A.size(); ++y0) {
      if (s.is_one()) {
        out[y0] = static_cast<int>(y0);
        continue;
      }
      int  y  = static_cast<int>(y0);
      bool ok = A.fiber[y] == s.q.range;
      // strip q: y = μ_{q1}(y1), y1 = μ_{q2}(y2), ...
      for (std::size_t i = 0; i < s.q.size() && ok; ++i) {
        ok = false;
        for (auto const& [a, b] : A.mu.at(s.q.edges[i])) {
          if (b == y) {
            y  = a;
            ok = true;
            break;
          }
        }
      }
      if (!ok) {
        continue;
      }
      auto gy = act_on(C, A, s.g, y);
      if (!gy) {
        continue;
      }
      y = *gy;
      for (auto it = s.p.edges.rbegin(); it != s.p.edges.rend() && ok; ++it) {
        auto n = mu_apply(A, *it, y);
        ok     = n.has_value();
        y      = ok ? *n : y;
      }
      if (ok) {
        out[y0] = y;
      }
    }
    return out;
  }

  inline Report validateAction(FiniteAction const& A, Correspondence const& C,
                               RegSet const& R, std::size_t wordcap = 2) {
    Report      rep("action " + A.name);
    auto const& B  = C.base();
    auto const  nY = static_cast<int>(A.size());
    auto        pn = [&](int y) { return A.points.at(y); };

    if (A.fiber.size() != A.size()
        || A.mu.size() != static_cast<std::size_t>(C.edge_count())) {
      rep.fail("shape", "fiber map or μ tables have the wrong size");
      return rep;
    }
    for (int y = 0; y < nY; ++y) {
      if (A.fiber[y] < 0 || A.fiber[y] >= B.object_count()) {
        rep.fail("shape", "point over an unknown vertex", pn(y));
        return rep;
      }
    }

    // G-action
    auto arrows = B.is_presented() ? B.arrows_up_to(wordcap)
                                   : B.arrows_up_to(0);
    for (auto const& [k, z] : A.gact) {
      auto const& [g, y] = k;
      if (y < 0 || y >= nY || z < 0 || z >= nY) {
        rep.fail("g-action", "table refers to an unknown point");
        return rep;
      }
      if (B.is_presented() && (g.code.size() != 1 || g.code[0] < 0)) {
        rep.fail("g-action", "table rows must use generator letters",
                 B.name(g));
      } else if (B.src(g) != A.fiber[y]) {
        rep.fail("g-action", "src(g) != r(y)", B.name(g) + " on " + pn(y));
      } else if (A.fiber[z] != B.rng(g)) {
        rep.fail("g-action", "r(g·y) != rng(g)", B.name(g) + " on " + pn(y));
      }
    }
    if (!rep.ok()) {
      return rep;
    }
    for (auto const& g : arrows) {
      std::set<int> hit;
      for (int y = 0; y < nY; ++y) {
        if (A.fiber[y] != B.src(g)) {
          continue;
        }
        auto gy = act_on(C, A, g, y);
        if (!gy) {
          rep.fail("g-action", "g·y undefined", B.name(g) + " on " + pn(y));
          continue;
        }
        if (B.is_unit(g) && *gy != y) {
          rep.fail("g-action", "unit does not act trivially",
                   B.name(g) + " on " + pn(y));
        }
        if (!hit.insert(*gy).second) {
          rep.fail("g-action", "g does not act injectively",
                   B.name(g) + " on " + pn(y));
        }
      }
    }
    std::size_t law_checks = 0;
    for (auto const& g : arrows) {
      for (auto const& h : arrows) {
        auto gh = B.compose(g, h);
        if (!gh || (B.is_presented() && B.word_length(*gh) > wordcap)) {
          continue;
        }
        for (int y = 0; y < nY; ++y) {
          if (A.fiber[y] != B.src(h)) {
            continue;
          }
          auto hy = act_on(C, A, h, y);
          auto l  = act_on(C, A, *gh, y);
          if (!hy || !l) {
            continue;
          }
          auto r = act_on(C, A, g, *hy);
          ++law_checks;
          if (!r || *r != *l) {
            rep.fail("g-action", "(gh)·y != g·(h·y)",
                     B.name(g) + ", " + B.name(h) + ", " + pn(y));
          }
        }
      }
    }
    // abelian presentations: generators must commute on Y
    if (B.is_presented() && B.presented().abelian) {
      auto gens = B.generators();
      for (auto const& a : gens) {
        for (auto const& b : gens) {
          for (int y = 0; y < nY; ++y) {
            auto ab = detail::act_letter_on(A, a.code[0], y);
            auto ba = detail::act_letter_on(A, b.code[0], y);
            if (!ab || !ba) {
              continue;
            }
            auto x1 = detail::act_letter_on(A, b.code[0], *ab);
            auto x2 = detail::act_letter_on(A, a.code[0], *ba);
            if (x1 != x2) {
              rep.fail("g-action", "generators do not commute on Y",
                       B.name(a) + ", " + B.name(b) + " on " + pn(y));
            }
          }
        }
      }
    }

    // μ_e lands over rng(e)
    for (int e = 0; e < C.edge_count(); ++e) {
      for (auto const& [y, z] : A.mu[e]) {
        auto w = C.edge(e).name + " on " + (y >= 0 && y < nY ? pn(y) : "?");
        if (y < 0 || y >= nY || z < 0 || z >= nY) {
          rep.fail("anchor-mu", "μ refers to an unknown point", w);
          continue;
        }
        if (A.fiber[y] != C.edge(e).src) {
          rep.fail("anchor-mu", "μ_e defined off Y_{src(e)}", w);
        }
        if (A.fiber[z] != C.edge(e).rng) {
          rep.fail("anchor-mu", "r(x·y) != r(x)", w);
        }
      }
    }
    if (rep.has("anchor-mu")) {
      return rep;
    }
    // compatibility: h·μ_e(y) = μ_{h∘e}(h|_e·y)
    std::size_t compat = 0;
    for (auto const& h : arrows) {
      for (int e = 0; e < C.edge_count(); ++e) {
        if (C.edge(e).rng != B.src(h)) {
          continue;
        }
        auto he = C.act_edge(h, e);
        if (!he) {
          continue;
        }
        for (int y = 0; y < nY; ++y) {
          if (A.fiber[y] != C.edge(e).src) {
            continue;
          }
          auto lhs_in = mu_apply(A, e, y);
          auto hy     = act_on(C, A, he->restriction, y);
          if (!hy) {
            continue;
          }
          auto rhs = mu_apply(A, he->edge, *hy);
          ++compat;
          auto w = "h=" + B.name(h) + ", e=" + C.edge(e).name + ", y=" + pn(y);
          if (lhs_in.has_value() != rhs.has_value()) {
            rep.fail("compatibility",
                     "μ_e(y) and μ_{h∘e}(h|_e·y) are not defined together",
                     w);
            continue;
          }
          if (!lhs_in) {
            continue;
          }
          auto lhs = act_on(C, A, h, *lhs_in);
          if (!lhs || *lhs != *rhs) {
            rep.fail("compatibility", "h·μ_e(y) != μ_{h∘e}(h|_e·y)", w);
          }
        }
      }
    }
    // x·y determines the orbit of (x, y)
    std::map<int, std::pair<int, int>> preimage;
    for (int e = 0; e < C.edge_count(); ++e) {
      for (auto const& [y, z] : A.mu[e]) {
        auto [it, fresh] = preimage.emplace(z, std::make_pair(e, y));
        if (!fresh) {
          auto [e2, y2] = it->second;
          rep.fail("free",
                   e2 == e ? "μ_e is not injective"
                           : "images of different edges meet",
                   pn(z) + " = " + C.edge(e2).name + "·" + pn(y2) + " = "
                       + C.edge(e).name + "·" + pn(y));
        }
      }
    }
    // every point over R lies in X·Y
    auto img = image_mask(A);
    for (int y = 0; y < nY; ++y) {
      if (R.at(A.fiber[y]) && !img[y]) {
        rep.fail("cover", "point over R outside X·Y", pn(y));
      }
    }
    rep.note("closedness of X·Y holds automatically: Y is finite");
    bool total = mu_total(C, A);
    rep.fact("mu_total", total ? "yes" : "no");
    if (!total) {
      rep.note("μ is partial; θ is compared as an inclusion of partial maps");
    }
    rep.fact("points", A.size());
    rep.fact("g_law_checks", law_checks);
    rep.fact("compatibility_checks", compat);
    if (!rep.ok()) {
      return rep;
    }

    // θ on singleton slices: θ(st) = θ(s)θ(t); equality needs total μ
    auto elems = bounded_elements(C, 1, std::min<std::size_t>(wordcap, 1));
    std::map<ISElement, std::vector<int>> th;
    for (auto const& s : elems) {
      th[s] = theta_on(C, A, s);
    }
    std::size_t theta_checks = 0;
    for (auto const& s : elems) {
      for (auto const& t : elems) {
        auto st  = isgMultiply(C, s, t);
        auto rhs = theta_on(C, A, st);
        for (int y = 0; y < nY; ++y) {
          int l = th[t][y] < 0 ? -1 : th[s][th[t][y]];
          ++theta_checks;
          bool bad = total ? l != rhs[y] : (l >= 0 && l != rhs[y]);
          if (bad) {
            rep.fail("theta", "θ(st) != θ(s)θ(t)",
                     element_name(C, s) + " . " + element_name(C, t) + " at "
                         + pn(y));
            break;
          }
        }
      }
    }
    rep.fact("theta_checks", theta_checks);
    return rep;
  }

  ////////////////////////////////////////////////////////////////////////
  // X ∘ Y
  ////////////////////////////////////////////////////////////////////////

  struct XYSpace {
    std::vector<std::pair<int, int>>                 pairs;  // (e, y)
    std::map<std::pair<Arrow, std::size_t>, std::size_t> act;  // h·[e,y]
    Report                                           report{"X∘Y"};
  };

  inline XYSpace composeXY(FiniteAction const& A, Correspondence const& C,
                           std::size_t wordcap = 2) {
    XYSpace     out;
    auto const& B = C.base();
    std::map<std::pair<int, int>, std::size_t> index;
    for (int e = 0; e < C.edge_count(); ++e) {
      for (std::size_t y = 0; y < A.size(); ++y) {
        if (A.fiber[y] == C.edge(e).src) {
          index[{e, int(y)}] = out.pairs.size();
          out.pairs.emplace_back(e, int(y));
        }
      }
    }
    auto arrows = B.is_presented() ? B.arrows_up_to(wordcap)
                                   : B.arrows_up_to(0);
    for (auto const& h : arrows) {
      for (std::size_t i = 0; i < out.pairs.size(); ++i) {
        auto [e, y] = out.pairs[i];
        if (C.edge(e).rng != B.src(h)) {
          continue;
        }
        auto he = C.act_edge(h, e);
        if (!he) {
          continue;
        }
        auto hy = act_on(C, A, he->restriction, y);
        if (!hy) {
          continue;
        }
        out.act[{h, i}] = index.at({he->edge, *hy});
        if (C.edge(he->edge).rng != B.rng(h)) {
          out.report.fail("projection", "π_1 is not equivariant",
                          B.name(h) + " on " + C.edge(e).name);
        }
      }
    }
    // (gh)·ξ = g·(h·ξ)
    std::size_t checks = 0;
    for (auto const& g : arrows) {
      for (auto const& h : arrows) {
        auto gh = B.compose(g, h);
        if (!gh) {
          continue;
        }
        for (std::size_t i = 0; i < out.pairs.size(); ++i) {
          auto a = out.act.find({h, i});
          auto l = out.act.find({*gh, i});
          if (a == out.act.end() || l == out.act.end()) {
            continue;
          }
          auto r = out.act.find({g, a->second});
          if (r == out.act.end()) {
            continue;
          }
          ++checks;
          if (r->second != l->second) {
            out.report.fail("action", "(gh)·[e,y] != g·(h·[e,y])",
                            B.name(g) + ", " + B.name(h) + ", "
                                + C.edge(out.pairs[i].first).name + ", "
                                + A.points[out.pairs[i].second]);
          }
        }
      }
    }
    out.report.fact("cardinality", out.pairs.size());
    out.report.fact("action_checks", checks);
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // The truncated universal action and the map into it
  ////////////////////////////////////////////////////////////////////////

  // Cuts a label to depth d.
  inline Point truncate_label(Correspondence const& C, Point const& p,
                              std::size_t d) {
    if (p.path.size() >= d) {
      return Point{C.prefix(p.path, d), true};
    }
    return p;
  }

  struct OmegaAction {
    BoundaryTrunc trunc;
    FiniteAction  action;
  };

  // BoundaryTrunc(depth, R) as a finite "action": g acts on paths, μ_e
  // prepends e and cuts back to the depth.  The cut makes μ non-injective at
  // the top level; it is a target for equivariance checks only.
  inline OmegaAction omegaAction(Correspondence const& C, RegSet const& R,
                                 std::size_t depth) {
    OmegaAction out;
    auto const& B = C.base();
    out.trunc     = buildBoundary(C, R, depth);
    auto& A       = out.action;
    A.name        = "Omega";
    auto const& L = out.trunc.points;
    for (auto const& p : L) {
      A.points.push_back(point_name(C, p));
      A.fiber.push_back(p.path.range);
    }
    A.mu.assign(C.edge_count(), {});
    auto gens = B.is_presented() ? B.generators() : B.arrows_up_to(0);
    for (std::size_t i = 0; i < L.size(); ++i) {
      for (auto const& g : gens) {
        if (B.src(g) != L[i].path.range) {
          continue;
        }
        auto act = C.try_act(g, L[i].path);
        if (!act) {
          continue;
        }
        auto j = out.trunc.index_of(Point{act->first, L[i].cylinder});
        if (j) {
          A.gact[{g, int(i)}] = int(*j);
        }
      }
      for (int e = 0; e < C.edge_count(); ++e) {
        if (C.edge(e).src != L[i].path.range) {
          continue;
        }
        Point img{C.concat(C.make_path({e}), L[i].path), L[i].cylinder};
        auto  j = out.trunc.index_of(truncate_label(C, img, depth));
        if (j) {
          A.mu[e][int(i)] = int(*j);
        }
      }
    }
    return out;
  }

  // ρ(y) at the given depth, by unfolding y = μ_e(y').
  inline std::vector<Point> universalMap(FiniteAction const&   A,
                                         Correspondence const& C,
                                         RegSet const& R, std::size_t depth) {
    auto chk = validateAction(A, C, R);
    if (!chk.ok()) {
      throw precondition_error("universalMap: invalid action ("
                               + chk.violations()[0].code + ": "
                               + chk.violations()[0].witness + ")");
    }
    std::map<int, std::pair<int, int>> pre;
    for (int e = 0; e < C.edge_count(); ++e) {
      for (auto const& [y, z] : A.mu[e]) {
        pre[z] = {e, y};
      }
    }
    std::vector<Point> out;
    for (std::size_t y0 = 0; y0 < A.size(); ++y0) {
      int              y = static_cast<int>(y0);
      std::vector<int> es;
      while (es.size() < depth) {
        auto it = pre.find(y);
        if (it == pre.end()) {
          break;
        }
        es.push_back(it->second.first);
        y = it->second.second;
      }
      int  v = A.fiber[y0];
      Path p = es.empty() ? Path{v, v, {}} : C.make_path(es);
      out.push_back(Point{p, es.size() == depth});
    }
    return out;
  }

  struct EquivarianceResult {
    bool   equivariant = false;
    Report report{"equivariance"};
  };

  // φ: Y1 -> Y2 as indices (-1 = unmapped, itself a violation).
  inline EquivarianceResult
  checkEquivariant(std::vector<int> const& phi, FiniteAction const& A1,
                   FiniteAction const& A2, Correspondence const& C,
                   std::size_t wordcap = 2) {
    EquivarianceResult out;
    auto&              rep = out.report;
    auto const&        B   = C.base();
    if (phi.size() != A1.size()) {
      throw precondition_error("checkEquivariant: map has the wrong size");
    }
    auto n1 = [&](int y) { return A1.points.at(y); };
    for (std::size_t y = 0; y < A1.size(); ++y) {
      if (phi[y] < 0 || phi[y] >= int(A2.size())) {
        rep.fail("anchor", "point not mapped", n1(int(y)));
        return out;
      }
      if (A2.fiber[phi[y]] != A1.fiber[y]) {
        rep.fail("anchor", "r(φ(y)) != r(y)", n1(int(y)));
      }
    }
    if (!rep.ok()) {
      return out;
    }
    auto arrows = B.is_presented() ? B.arrows_up_to(wordcap)
                                   : B.arrows_up_to(0);
    for (auto const& g : arrows) {
      for (std::size_t y = 0; y < A1.size(); ++y) {
        if (A1.fiber[y] != B.src(g)) {
          continue;
        }
        auto gy  = act_on(C, A1, g, int(y));
        auto gpy = act_on(C, A2, g, phi[y]);
        if (!gy || !gpy || phi[*gy] != *gpy) {
          rep.fail("g-equivariance", "φ(g·y) != g·φ(y)",
                   B.name(g) + " on " + n1(int(y)));
        }
      }
    }
    for (int e = 0; e < C.edge_count(); ++e) {
      for (auto const& [y, z] : A1.mu[e]) {
        auto r = mu_apply(A2, e, phi[y]);
        if (!r || *r != phi[z]) {
          rep.fail("x-equivariance", "φ(x·y) != x·φ(y)",
                   C.edge(e).name + " on " + n1(y));
        }
      }
    }
    auto img1 = image_mask(A1);
    auto img2 = image_mask(A2);
    for (std::size_t y = 0; y < A1.size(); ++y) {
      if (img2[phi[y]] != img1[y]) {
        rep.fail("preimage", "φ^{-1}(X·Y2) != X·Y1", n1(int(y)));
      }
    }
    out.equivariant = rep.ok();
    return out;
  }

  // The sub-action on X·Y and its inclusion into Y.
  inline std::pair<FiniteAction, std::vector<int>>
  restrictToImage(FiniteAction const& A) {
    auto              img = image_mask(A);
    FiniteAction      sub;
    std::vector<int>  incl;
    std::map<int, int> to_sub;
    sub.name = A.name + "|X.Y";
    for (std::size_t y = 0; y < A.size(); ++y) {
      if (img[y]) {
        to_sub[int(y)] = int(sub.points.size());
        sub.points.push_back(A.points[y]);
        sub.fiber.push_back(A.fiber[y]);
        incl.push_back(int(y));
      }
    }
    for (auto const& [k, z] : A.gact) {
      if (to_sub.count(k.second) && to_sub.count(z)) {
        sub.gact[{k.first, to_sub[k.second]}] = to_sub[z];
      }
    }
    sub.mu.assign(A.mu.size(), {});
    for (std::size_t e = 0; e < A.mu.size(); ++e) {
      for (auto const& [y, z] : A.mu[e]) {
        if (to_sub.count(y)) {
          sub.mu[e][to_sub[y]] = to_sub[z];
        }
      }
    }
    return {sub, incl};
  }

  struct UniquenessResult {
    std::string status;  // "ok" or "skipped"
    std::size_t candidates = 0;
    std::size_t equivariant = 0;
    std::vector<std::vector<int>> maps;  // the equivariant ones
    Report report{"uniqueness"};
  };

  // Exhausts fiber-respecting maps Y -> BoundaryTrunc(depth, ∅) (the finite
  // paths and the depth-cylinders) and counts the equivariant ones.
  inline UniquenessResult uniquenessAudit(FiniteAction const&   A,
                                          Correspondence const& C,
                                          std::size_t           depth,
                                          std::size_t budget = 1'000'000) {
    UniquenessResult out;
    RegSet           empty(C.base().object_count(), false);
    auto             target = omegaAction(C, empty, depth);
    std::vector<std::vector<int>> choices(A.size());
    double total = 1;
    for (std::size_t y = 0; y < A.size(); ++y) {
      for (std::size_t i = 0; i < target.action.size(); ++i) {
        if (target.action.fiber[i] == A.fiber[y]) {
          choices[y].push_back(int(i));
        }
      }
      total *= static_cast<double>(choices[y].size());
    }
    out.report.fact("candidates", static_cast<std::size_t>(total));
    if (total > static_cast<double>(budget)) {
      out.status = "skipped";
      out.report.note("candidate count exceeds the budget of "
                      + std::to_string(budget));
      out.report.fact("status", out.status);
      return out;
    }
    std::vector<std::size_t> pick(A.size(), 0);
    std::vector<int>         phi(A.size());
    bool                     done = false;
    for (auto const& c : choices) {
      done = done || c.empty();
    }
    while (!done) {
      for (std::size_t y = 0; y < A.size(); ++y) {
        phi[y] = choices[y][pick[y]];
      }
      ++out.candidates;
      if (checkEquivariant(phi, A, target.action, C).equivariant) {
        ++out.equivariant;
        out.maps.push_back(phi);
      }
      std::size_t k = 0;
      while (k < A.size() && ++pick[k] == choices[k].size()) {
        pick[k++] = 0;
      }
      done = k == A.size();
    }
    out.status = "ok";
    out.report.fact("status", out.status);
    out.report.fact("equivariant_maps", out.equivariant);
    if (out.equivariant != 1) {
      out.report.fail("uniqueness",
                      "expected exactly one equivariant map",
                      std::to_string(out.equivariant) + " found");
    }
    for (auto const& m : out.maps) {
      std::string s;
      for (std::size_t y = 0; y < m.size(); ++y) {
        s += (y ? ", " : "") + A.points[y] + " -> "
             + target.action.points[m[y]];
      }
      out.report.note("equivariant map: " + (s.empty() ? "(empty)" : s));
    }
    return out;
  }

}  // namespace gcorr
