#pragma once

// Truncations of the universal action spaces: Ω_{[m,n]} as finite paths of
// length m..n, the boundary space Ω(R) at depth n, and the commutative
// algebra A_{[m,n]} with its characters.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "gcorr/correspondence.hpp"
#include "gcorr/error.hpp"
#include "gcorr/report.hpp"

namespace gcorr {

  using Rational = boost::multiprecision::cpp_rational;

  ////////////////////////////////////////////////////////////////////////
  // Ω_{[m,n]}
  ////////////////////////////////////////////////////////////////////////

  struct OmegaTrunc {
    std::size_t                    m = 0;
    std::size_t                    n = 0;
    std::vector<std::vector<Path>> levels;  // levels[k - m] = F_k

    [[nodiscard]] std::vector<Path> points() const {
      std::vector<Path> out;
      for (auto const& l : levels) {
        out.insert(out.end(), l.begin(), l.end());
      }
      return out;
    }
    [[nodiscard]] std::size_t size() const {
      std::size_t s = 0;
      for (auto const& l : levels) {
        s += l.size();
      }
      return s;
    }
  };

  inline OmegaTrunc buildOmega(Correspondence const& C, std::size_t m,
                               std::size_t n) {
    if (m > n) {
      throw precondition_error("buildOmega: m > n");
    }
    OmegaTrunc out{m, n, {}};
    for (std::size_t k = m; k <= n; ++k) {
      out.levels.push_back(C.pathsOfLength(k));
    }
    return out;
  }

  // π_n^k on a single point (the prefix of length k).
  inline Path project(Correspondence const& C, Path const& p, std::size_t k) {
    if (k > p.size()) {
      throw precondition_error("project: target level above the point");
    }
    return C.prefix(p, k);
  }

  ////////////////////////////////////////////////////////////////////////
  // Ω(R) at depth n
  ////////////////////////////////////////////////////////////////////////

  // A label of BoundaryTrunc(n, R): either the cylinder of all points of
  // Ω(R) extending a length-n path, or a finite path with source outside R.
  struct Point {
    Path path;
    bool cylinder = false;

    bool operator==(Point const&) const = default;
    bool operator<(Point const& that) const {
      return std::tie(path, cylinder) < std::tie(that.path, that.cylinder);
    }
  };

  struct BoundaryTrunc {
    std::size_t        depth = 0;
    RegSet             R;
    std::vector<Point> points;

    [[nodiscard]] std::optional<std::size_t> index_of(Point const& p) const {
      auto it = std::lower_bound(points.begin(), points.end(), p);
      if (it == points.end() || !(*it == p)) {
        return std::nullopt;
      }
      return static_cast<std::size_t>(it - points.begin());
    }
  };

  inline BoundaryTrunc buildBoundary(Correspondence const& C, RegSet const& R,
                                     std::size_t n) {
    auto chk = check_regset(C, R);
    if (!chk.ok()) {
      throw input_error("buildBoundary: " + chk.violations()[0].message
                        + " (" + chk.violations()[0].witness + ")");
    }
    BoundaryTrunc out{n, R, {}};
    for (std::size_t k = 0; k <= n; ++k) {
      for (auto const& p : C.pathsOfLength(k)) {
        if (k == n) {
          out.points.push_back(Point{p, true});
        } else if (!R[p.source]) {
          out.points.push_back(Point{p, false});
        }
      }
    }
    std::sort(out.points.begin(), out.points.end());
    return out;
  }

  inline std::string point_name(Correspondence const& C, Point const& p) {
    return C.path_name(p.path) + (p.cylinder ? "..." : "");
  }

  // Maps an exact finite point of Ω(R) (cylinder = false) or a cylinder set
  // Z(c) (cylinder = true) to the depth-N label that equals it as a subset
  // of Ω(R).  nullopt when no single label does.
  inline std::optional<Point> canonicalize(Correspondence const& C,
                                           RegSet const& R, std::size_t N,
                                           Point const& x) {
    auto unique_step = [&](int v) {
      return R[v] && C.fiber(v).size() == 1;
    };
    Path c = x.path;
    if (!x.cylinder) {
      if (R[c.source]) {
        return std::nullopt;  // not a point of Ω(R)
      }
      if (c.size() < N) {
        return x;
      }
      for (std::size_t i = N; i < c.size(); ++i) {
        if (!unique_step(C.prefix(c, i).source)) {
          return std::nullopt;
        }
      }
      if (!C.fiber(c.source).empty()) {
        return std::nullopt;
      }
      return Point{C.prefix(c, N), true};
    }
    if (c.size() > N) {
      for (std::size_t i = N; i < c.size(); ++i) {
        if (!unique_step(C.prefix(c, i).source)) {
          return std::nullopt;
        }
      }
      return Point{C.prefix(c, N), true};
    }
    while (c.size() < N) {
      int v = c.source;
      if (unique_step(v)) {
        int e = C.fiber(v)[0];
        c.edges.push_back(e);
        c.source = C.edge(e).src;
      } else if (!R[v] && C.fiber(v).empty()) {
        return Point{c, false};
      } else {
        return std::nullopt;
      }
    }
    return Point{c, true};
  }

  ////////////////////////////////////////////////////////////////////////
  // Ω_{[m,n]} ≅ X_m ∘ Ω_{[0,n-m]}
  ////////////////////////////////////////////////////////////////////////

  struct CircWitness {
    // (point, prefix of length m, tail)
    std::vector<std::tuple<Path, Path, Path>> pairs;
    Report                                    report{"circ identification"};
  };

  inline CircWitness circIdentification(Correspondence const& C,
                                        std::size_t m, std::size_t n,
                                        std::size_t wordcap = 2) {
    if (m > n) {
      throw precondition_error("circIdentification: m > n");
    }
    CircWitness out;
    auto const& B = C.base();
    std::set<std::pair<Path, Path>> seen;
    auto        omega = buildOmega(C, m, n);
    for (auto const& p : omega.points()) {
      Path pre  = C.prefix(p, m);
      Path tail = strip_prefix(pre, p);
      if (!(C.concat(pre, tail) == p)) {
        out.report.fail("split", "prefix and tail do not reassemble",
                        C.path_name(p));
      }
      if (!seen.emplace(pre, tail).second) {
        out.report.fail("bijection", "pair hit twice", C.path_name(p));
      }
      out.pairs.emplace_back(p, pre, tail);
    }
    // conversely every composable (prefix, tail) pair must occur
    std::size_t expected = 0;
    for (auto const& pre : C.pathsOfLength(m)) {
      for (std::size_t k = 0; k + m <= n; ++k) {
        for (auto const& t : C.pathsOfLength(k)) {
          if (t.range == pre.source) {
            ++expected;
          }
        }
      }
    }
    if (expected != out.pairs.size()) {
      out.report.fail("bijection", "pair count differs from |X_m ∘ Ω|",
                      std::to_string(expected) + " vs "
                          + std::to_string(out.pairs.size()));
    }
    // [(p, g)·h, t] = [(p, g), h∘t]: p⌢((gh)∘t) = p⌢(g∘(h∘t))
    auto        arrows = B.arrows_up_to(wordcap);
    std::size_t checks = 0;
    for (auto const& pre : C.pathsOfLength(m)) {
      for (auto const& g : arrows) {
        if (B.rng(g) != pre.source) {
          continue;
        }
        for (auto const& h : arrows) {
          auto gh = B.compose(g, h);
          if (!gh) {
            continue;
          }
          for (std::size_t k = 0; k + m <= n; ++k) {
            for (auto const& t : C.pathsOfLength(k)) {
              if (t.range != B.src(h)) {
                continue;
              }
              auto lhs = C.try_act(*gh, t);
              auto ht  = C.try_act(h, t);
              if (!lhs || !ht) {
                continue;
              }
              auto rhs = C.try_act(g, ht->first);
              ++checks;
              if (!rhs || !(lhs->first == rhs->first)) {
                out.report.fail("well-defined",
                                "(gh)∘t != g∘(h∘t) in the identification",
                                C.path_name(pre) + ", " + B.name(g) + ", "
                                    + B.name(h) + ", " + C.path_name(t));
              }
            }
          }
        }
      }
    }
    out.report.fact("points", out.pairs.size());
    out.report.fact("twist_checks", checks);
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // A_{[m,n]}
  ////////////////////////////////////////////////////////////////////////

  // Components f_k (k = m..n) as finitely supported functions on F_k; zero
  // entries are never stored.
  struct AmnElement {
    std::size_t                          m = 0;
    std::size_t                          n = 0;
    std::vector<std::map<Path, Rational>> comps;

    AmnElement() = default;
    AmnElement(std::size_t m_, std::size_t n_)
        : m(m_), n(n_), comps(n_ - m_ + 1) {}

    void set(Path const& p, Rational const& v) {
      if (p.size() < m || p.size() > n) {
        throw precondition_error("AmnElement::set: level out of range");
      }
      auto& c = comps[p.size() - m];
      if (v == 0) {
        c.erase(p);
      } else {
        c[p] = v;
      }
    }
    [[nodiscard]] Rational get(Path const& p) const {
      if (p.size() < m || p.size() > n) {
        return 0;
      }
      auto const& c  = comps[p.size() - m];
      auto        it = c.find(p);
      return it == c.end() ? Rational(0) : it->second;
    }
    bool operator==(AmnElement const&) const = default;
  };

  // Φ(a)(x) = Σ_{k=m}^{|x|} f_k(π^k x), evaluated at one point.
  inline Rational cumulative_at(Correspondence const& C, AmnElement const& a,
                                Path const& x) {
    Rational s = 0;
    for (std::size_t k = a.m; k <= x.size() && k <= a.n; ++k) {
      s += a.get(C.prefix(x, k));
    }
    return s;
  }

  inline std::map<Path, Rational> amnTransform(Correspondence const& C,
                                               AmnElement const&     a) {
    std::map<Path, Rational> out;
    for (auto const& x : buildOmega(C, a.m, a.n).points()) {
      out[x] = cumulative_at(C, a, x);
    }
    return out;
  }

  // f_j = Φ_j − Φ_{j−1}∘π.
  inline AmnElement amnInverseTransform(Correspondence const&           C,
                                        std::map<Path, Rational> const& phi,
                                        std::size_t m, std::size_t n) {
    AmnElement out(m, n);
    for (auto const& [x, v] : phi) {
      Rational f = v;
      if (x.size() > m) {
        auto it = phi.find(C.prefix(x, x.size() - 1));
        if (it == phi.end()) {
          throw precondition_error("amnInverseTransform: missing prefix");
        }
        f -= it->second;
      }
      out.set(x, f);
    }
    return out;
  }

  inline AmnElement amnMultiply(Correspondence const& C, AmnElement const& a,
                                AmnElement const& b) {
    if (a.m != b.m || a.n != b.n) {
      throw precondition_error("amnMultiply: mismatched ranges");
    }
    auto pa = amnTransform(C, a);
    auto pb = amnTransform(C, b);
    for (auto& [x, v] : pa) {
      v *= pb.at(x);
    }
    return amnInverseTransform(C, pa, a.m, a.n);
  }

  inline AmnElement amnAdd(AmnElement const& a, AmnElement const& b) {
    if (a.m != b.m || a.n != b.n) {
      throw precondition_error("amnAdd: mismatched ranges");
    }
    AmnElement out = a;
    for (auto const& c : b.comps) {
      for (auto const& [p, v] : c) {
        out.set(p, out.get(p) + v);
      }
    }
    return out;
  }

  // The character at a point x: a ↦ Φ(a)(x).
  struct Character {
    Path point;

    [[nodiscard]] Rational operator()(Correspondence const& C,
                                      AmnElement const&     a) const {
      return cumulative_at(C, a, point);
    }
  };

  inline std::vector<Character>
  amnCharacters(Correspondence const& C, std::size_t m, std::size_t n) {
    std::vector<Character> out;
    for (auto const& x : buildOmega(C, m, n).points()) {
      out.push_back(Character{x});
    }
    return out;
  }

  // Random element with small integer entries on a sparse support.
  inline AmnElement amnRandom(Correspondence const& C, std::size_t m,
                              std::size_t n, std::mt19937_64& rng) {
    AmnElement                         a(m, n);
    std::uniform_int_distribution<int> coin(0, 2), val(-3, 3);
    for (auto const& x : buildOmega(C, m, n).points()) {
      if (coin(rng) == 0) {
        a.set(x, val(rng));
      }
    }
    return a;
  }

  // Commutativity, associativity, distributivity, the unit Φ^{-1}(1), the
  // Φ round trip and multiplicativity of every character on `triples`
  // random triples.
  inline Report amnAudit(Correspondence const& C, std::size_t m,
                         std::size_t n, std::size_t triples,
                         std::uint64_t seed) {
    Report          rep("A_[m,n] algebra");
    std::mt19937_64 rng(seed);
    auto            chars = amnCharacters(C, m, n);
    std::size_t     points = 0;
    for (std::size_t k = m; k <= n; ++k) {
      points += C.pathsOfLength(k).size();
    }
    if (chars.size() != points) {
      rep.fail("characters", "character count differs from sum |F_k|",
               std::to_string(chars.size()) + " vs "
                   + std::to_string(points));
    }
    std::map<Path, Rational> ones;
    for (auto const& x : buildOmega(C, m, n).points()) {
      ones[x] = 1;
    }
    auto one = amnInverseTransform(C, ones, m, n);
    auto w   = [](std::size_t i) { return "triple " + std::to_string(i); };
    for (std::size_t i = 0; i < triples; ++i) {
      auto a = amnRandom(C, m, n, rng);
      auto b = amnRandom(C, m, n, rng);
      auto c = amnRandom(C, m, n, rng);
      if (!(amnMultiply(C, a, b) == amnMultiply(C, b, a))) {
        rep.fail("commutativity", "ab != ba", w(i));
      }
      if (!(amnMultiply(C, amnMultiply(C, a, b), c)
            == amnMultiply(C, a, amnMultiply(C, b, c)))) {
        rep.fail("associativity", "(ab)c != a(bc)", w(i));
      }
      if (!(amnMultiply(C, a, amnAdd(b, c))
            == amnAdd(amnMultiply(C, a, b), amnMultiply(C, a, c)))) {
        rep.fail("distributivity", "a(b+c) != ab+ac", w(i));
      }
      if (!(amnMultiply(C, one, a) == a)) {
        rep.fail("unit", "1a != a", w(i));
      }
      if (!(amnInverseTransform(C, amnTransform(C, a), m, n) == a)) {
        rep.fail("round-trip", "Φ^{-1}(Φ(a)) != a", w(i));
      }
      auto ab = amnMultiply(C, a, b);
      for (auto const& chi : chars) {
        if (chi(C, ab) != chi(C, a) * chi(C, b)) {
          rep.fail("character", "χ(ab) != χ(a)χ(b)",
                   C.path_name(chi.point) + ", " + w(i));
          break;
        }
      }
    }
    rep.fact("triples", triples);
    rep.fact("characters", chars.size());
    rep.fact("seed", seed);
    return rep;
  }

}  // namespace gcorr
