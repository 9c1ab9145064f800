#include <catch_amalgamated.hpp>

#include "support.hpp"

using namespace gcorr;

namespace {
  // Φ by direct prefix sums over the raw components, for the oracle below.
  Rational phi_direct(AmnElement const& a, Path const& x) {
    Rational s = 0;
    for (std::size_t k = a.m; k <= std::min(x.size(), a.n); ++k) {
      for (auto const& [p, v] : a.comps[k - a.m]) {
        if (std::equal(p.edges.begin(), p.edges.end(), x.edges.begin())
            && p.range == x.range) {
          s += v;
        }
      }
    }
    return s;
  }
}  // namespace

TEST_CASE("buildOmega sizes") {
  CHECK(buildOmega(gtest::fixture("o2").corr, 0, 2).size() == 7);
  auto se = buildOmega(gtest::fixture("single_edge").corr, 0, 2);
  CHECK(se.size() == 3);
  CHECK(buildOmega(gtest::fixture("single_loop").corr, 0, 3).size() == 4);
  CHECK_THROWS_AS(buildOmega(gtest::fixture("o2").corr, 3, 2),
                  precondition_error);
}

TEST_CASE("property: projections are coherent") {
  for (auto name : {"o2", "singular", "ep_flip", "pair_loops"}) {
    auto const& C = gtest::fixture(name).corr;
    for (auto const& x : buildOmega(C, 0, 4).points()) {
      for (std::size_t m = 0; m <= x.size(); ++m) {
        auto pm = project(C, x, m);
        CHECK(pm.size() == m);
        CHECK(is_prefix(pm, x));
        for (std::size_t k = 0; k <= m; ++k) {
          CHECK(project(C, pm, k) == project(C, x, k));
        }
      }
    }
  }
}

TEST_CASE("buildBoundary examples") {
  auto const& S = gtest::fixture("single_edge");
  auto        b = buildBoundary(S.corr, S.R, 2);
  std::vector<std::string> names;
  for (auto const& p : b.points) {
    names.push_back(point_name(S.corr, p));
  }
  std::sort(names.begin(), names.end());
  CHECK(names == std::vector<std::string>{"[w]", "e1"});

  auto const& O = gtest::fixture("o2");
  auto        bo = buildBoundary(O.corr, O.R, 3);
  CHECK(bo.points.size() == 8);
  for (auto const& p : bo.points) {
    CHECK(p.path.size() == 3);
    CHECK(p.cylinder);
  }

  // R empty: same paths as Ω_[0,n]
  for (auto name : {"o2", "singular", "single_edge", "odometer"}) {
    auto const& C = gtest::fixture(name).corr;
    RegSet      none(C.base().object_count(), false);
    std::set<Path> a, c;
    for (auto const& p : buildBoundary(C, none, 3).points) {
      a.insert(p.path);
    }
    for (auto const& p : buildOmega(C, 0, 3).points()) {
      c.insert(p);
    }
    CHECK(a == c);
  }

  auto const& P = gtest::fixture("pair_loops");
  CHECK_THROWS_AS(buildBoundary(P.corr, RegSet{true, false}, 2), input_error);
}

TEST_CASE("property: boundary truncates onto the lower depth") {
  for (auto name : {"o2", "singular", "single_edge", "single_loop",
                    "ep_flip"}) {
    INFO(name);
    auto const& d = gtest::fixture(name);
    auto const& C = d.corr;
    for (std::size_t n = 1; n <= 5; ++n) {
      auto hi = buildBoundary(C, d.R, n);
      auto lo = buildBoundary(C, d.R, n - 1);
      std::set<Point> image;
      for (auto const& p : hi.points) {
        CHECK((p.path.size() == n || !d.R[p.path.source]));
        Point t = p.path.size() >= n - 1
                      ? Point{C.prefix(p.path, n - 1), true}
                      : p;
        image.insert(t);
      }
      for (auto const& q : lo.points) {
        // carve-out: a length n-1 cylinder ending at a vertex of R with an
        // empty fiber has no extension
        bool dead = q.cylinder && d.R[q.path.source]
                    && C.fiber(q.path.source).empty();
        CHECK((image.count(q) == 1 || dead));
      }
    }
  }
}

TEST_CASE("circIdentification") {
  auto const& O = gtest::fixture("o2").corr;
  auto        w = circIdentification(O, 1, 2);
  CHECK(w.report.ok());
  CHECK(w.pairs.size() == 6);
  for (auto const& [p, pre, tail] : w.pairs) {
    CHECK(pre.size() == 1);
    CHECK(pre.edges[0] == p.edges[0]);
    CHECK(tail.size() == p.size() - 1);
  }
  auto same = circIdentification(O, 2, 2);
  for (auto const& [p, pre, tail] : same.pairs) {
    CHECK(pre == p);
    CHECK(tail.empty());
  }
  auto const& L = gtest::fixture("single_loop").corr;
  auto        l = circIdentification(L, 2, 5);
  CHECK(l.report.ok());
  CHECK(l.pairs.size() == 4);
  for (auto name : {"odometer", "ep_flip", "pair_loops"}) {
    CHECK(circIdentification(gtest::fixture(name).corr, 1, 3).report.ok());
  }
}

TEST_CASE("amnMultiply examples") {
  auto const& O = gtest::fixture("o2").corr;
  auto        a_edge = O.parse_path("a");
  auto        v      = O.parse_path("[v]");

  AmnElement a(0, 2), b(0, 2);
  a.set(v, 2);
  b.set(a_edge, 3);
  auto ab = amnMultiply(O, a, b);
  CHECK(ab.get(a_edge) == 6);
  std::size_t nonzero = 0;
  for (auto const& c : ab.comps) {
    nonzero += c.size();
  }
  CHECK(nonzero == 1);

  // m = n: componentwise
  std::mt19937_64 rng(5);
  for (int i = 0; i < 20; ++i) {
    auto x = amnRandom(O, 2, 2, rng);
    auto y = amnRandom(O, 2, 2, rng);
    auto xy = amnMultiply(O, x, y);
    for (auto const& p : O.pathsOfLength(2)) {
      CHECK(xy.get(p) == x.get(p) * y.get(p));
    }
  }

  // constant 1 on F_0 is the unit
  AmnElement one(0, 3);
  one.set(v, 1);
  for (int i = 0; i < 20; ++i) {
    auto y = amnRandom(O, 0, 3, rng);
    CHECK(amnMultiply(O, one, y) == y);
  }
  CHECK_THROWS_AS(amnMultiply(O, AmnElement(0, 1), AmnElement(0, 2)),
                  precondition_error);
}

TEST_CASE("property: amnMultiply is the pointwise product of prefix sums") {
  std::mt19937_64 rng(17);
  for (auto name : {"o2", "singular", "single_edge", "ep_flip"}) {
    auto const& C = gtest::fixture(name).corr;
    for (std::size_t m = 0; m <= 2; ++m) {
      for (int i = 0; i < 20; ++i) {
        auto a  = amnRandom(C, m, 3, rng);
        auto b  = amnRandom(C, m, 3, rng);
        auto ab = amnMultiply(C, a, b);
        for (auto const& x : buildOmega(C, m, 3).points()) {
          CHECK(phi_direct(ab, x) == phi_direct(a, x) * phi_direct(b, x));
        }
      }
    }
  }
}

TEST_CASE("characters") {
  CHECK(amnCharacters(gtest::fixture("o2").corr, 0, 1).size() == 3);
  auto const& S = gtest::fixture("single_edge").corr;
  CHECK(amnCharacters(S, 0, 0).size() == 2);
  auto chars = amnCharacters(S, 0, 1);
  CHECK(chars.size() == 3);
  std::mt19937_64 rng(23);
  for (int i = 0; i < 100; ++i) {
    auto a = amnRandom(S, 0, 1, rng);
    auto b = amnRandom(S, 0, 1, rng);
    auto ab = amnMultiply(S, a, b);
    for (auto const& chi : chars) {
      CHECK(chi(S, ab) == chi(S, a) * chi(S, b));
    }
  }
}

TEST_CASE("amnAudit passes on the corpus") {
  for (auto name : {"o2", "singular", "single_edge", "odometer"}) {
    auto r = amnAudit(gtest::fixture(name).corr, 1, 3, 20, 1);
    CHECK(r.ok());
  }
}
