#include <catch_amalgamated.hpp>

#include "support.hpp"

using namespace gcorr;

namespace {
  Arrow zpow(long k) {
    std::vector<int32_t> w(static_cast<std::size_t>(std::abs(k)),
                           k >= 0 ? 1 : -1);
    return Arrow{w};
  }
}  // namespace

TEST_CASE("validateCorrespondence on the corpus") {
  for (auto name : {"o2", "o3", "single_edge", "single_loop", "singular",
                    "odometer", "ep_flip", "pair_loops"}) {
    INFO(name);
    auto d = gtest::fixture(name);
    CHECK(validateCorrespondence(d.corr, 3).ok());
  }
}

TEST_CASE("odometer with z|_1 = e breaks the cocycle") {
  auto d = gtest::fixture("odometer");
  auto C = gtest::rebuild(d.corr, [&](Correspondence::CocycleRow& r) {
    if (r.g == zpow(1) && d.corr.edge(r.x).name == "1") {
      r.restriction = Arrow{};
    }
    return true;
  });
  auto rep = validateCorrespondence(C, 3);
  REQUIRE(rep.has("cocycle"));
  CHECK(rep.first("cocycle")->witness.find("z^2") != std::string::npos);
}

TEST_CASE("pathsOfLength matches brute-force enumeration") {
  CHECK(gtest::fixture("o2").corr.pathsOfLength(3).size() == 8);
  CHECK(gtest::fixture("single_edge").corr.pathsOfLength(2).empty());
  CHECK(gtest::fixture("single_loop").corr.pathsOfLength(5).size() == 1);
  for (auto name : {"o2", "o3", "single_edge", "single_loop", "singular",
                    "ep_flip", "pair_loops"}) {
    INFO(name);
    auto const& C = gtest::fixture(name).corr;
    CHECK(C.pathsOfLength(0).size()
          == static_cast<std::size_t>(C.base().object_count()));
    for (std::size_t n = 1; n <= 5; ++n) {
      std::set<std::vector<int>> got;
      for (auto const& p : C.pathsOfLength(n)) {
        CHECK(p.size() == n);
        got.insert(p.edges);
      }
      CHECK(got == gtest::brute_paths(C, n));
      // prefix-extension recurrence
      std::size_t ext = 0;
      for (auto const& p : C.pathsOfLength(n - 1)) {
        ext += C.fiber(p.source).size();
      }
      CHECK(C.pathsOfLength(n).size() == ext);
    }
  }
}

TEST_CASE("odometer actOnPath examples") {
  auto const& C = gtest::fixture("odometer").corr;
  auto        z = C.base().parse("z");
  auto [p1, r1] = C.actOnPath(z, C.parse_path("11"));
  CHECK(C.path_name(p1) == "00");
  CHECK(r1 == z);
  auto [p2, r2] = C.actOnPath(z, C.parse_path("10"));
  CHECK(C.path_name(p2) == "01");
  CHECK(r2 == Arrow{});
}

TEST_CASE("property: odometer agrees with binary addition") {
  auto const& C = gtest::fixture("odometer").corr;
  for (std::size_t n = 0; n <= 5; ++n) {
    for (auto const& p : C.pathsOfLength(n)) {
      std::vector<int> digits;
      for (int x : p.edges) {
        digits.push_back(C.edge(x).name == "1" ? 1 : 0);
      }
      for (long k = -5; k <= 5; ++k) {
        auto [q, h]          = C.actOnPath(zpow(k), p);
        auto [want, carry]   = gtest::odometer_add(digits, k);
        std::vector<int> got;
        for (int x : q.edges) {
          got.push_back(C.edge(x).name == "1" ? 1 : 0);
        }
        INFO(C.path_name(p) << " k=" << k);
        CHECK(got == want);
        CHECK(h == zpow(carry));
      }
    }
  }
}

TEST_CASE("property: actOnPath is a groupoid action") {
  for (auto name : {"ep_flip", "pair_loops", "odometer", "o2", "singular"}) {
    INFO(name);
    auto const& C = gtest::fixture(name).corr;
    auto const& B = C.base();
    auto        arrows = B.arrows_up_to(2);
    for (std::size_t n = 0; n <= 3; ++n) {
      for (auto const& p : C.pathsOfLength(n)) {
        // unit law
        auto [pu, ru] = C.actOnPath(B.unit(p.range), p);
        CHECK(pu == p);
        CHECK(ru == B.unit(p.source));
        for (auto const& g : arrows) {
          if (B.src(g) != p.range) {
            continue;
          }
          auto [gp, gr] = C.actOnPath(g, p);
          CHECK(gp.size() == p.size());
          CHECK(gp.range == B.rng(g));
          CHECK(B.src(gr) == p.source);
          CHECK(B.rng(gr) == gp.source);
          for (auto const& h : arrows) {
            auto hg = B.compose(h, g);
            if (!hg) {
              continue;
            }
            auto [hgp, hgr] = C.actOnPath(*hg, p);
            auto [hp, hr]   = C.actOnPath(h, gp);
            CHECK(hgp == hp);
            CHECK(hgr == B.mul(hr, gr));
          }
        }
      }
    }
  }
}

TEST_CASE("bracketEdges") {
  auto const& O = gtest::fixture("o2").corr;
  auto        u = O.base().unit(0);
  auto        a = O.edge_index("a"), b = O.edge_index("b");
  CHECK(O.bracketEdges({a, u}, {a, u}) == std::optional<Arrow>(u));
  CHECK_FALSE(O.bracketEdges({a, u}, {b, u}).has_value());

  auto const& C    = gtest::fixture("odometer").corr;
  auto        zero = C.edge_index("0");
  auto        h    = C.bracketEdges({zero, zpow(1)}, {zero, Arrow{}});
  REQUIRE(h.has_value());
  CHECK(*h == zpow(-1));

  // x·<x|y> = y on the pair groupoid fixture
  auto const& P = gtest::fixture("pair_loops").corr;
  for (int x = 0; x < P.edge_count(); ++x) {
    for (auto const& g : P.base().arrows_up_to(0)) {
      if (P.base().rng(g) != P.edge(x).src) {
        continue;
      }
      for (auto const& k : P.base().arrows_up_to(0)) {
        if (P.base().rng(k) != P.edge(x).src) {
          continue;
        }
        auto br = P.bracketEdges({x, g}, {x, k});
        REQUIRE(br.has_value());
        CHECK(P.base().mul(g, *br) == k);
      }
    }
  }
  CHECK_THROWS_AS(O.bracketEdges({a, u}, {99, u}), input_error);
}

TEST_CASE("maximalProperSubset") {
  auto o2 = gtest::fixture("o2").corr.maximalProperSubset();
  CHECK(o2.ymax == std::vector<int>{0});
  CHECK(o2.regular == std::vector<int>{0});
  auto const& S  = gtest::fixture("single_edge").corr;
  auto        se = S.maximalProperSubset();
  CHECK(se.regular == std::vector<int>{S.base().object_index("v")});
  Correspondence empty(Base(makeSetGroupoid({"p", "q"})), {});
  CHECK(empty.maximalProperSubset().regular.empty());
  CHECK(empty.maximalProperSubset().ymax.size() == 2);
}

TEST_CASE("regularity sets must be invariant") {
  auto const& P = gtest::fixture("pair_loops").corr;
  CHECK(check_regset(P, RegSet{true, true}).ok());
  CHECK(check_regset(P, RegSet{true, false}).has("regularity"));
}

TEST_CASE("property: seeded cocycle mutations are caught") {
  auto const& C = gtest::fixture("ep_flip").corr;
  std::mt19937_64 rng(3);
  int caught = 0;
  for (int round = 0; round < 60; ++round) {
    auto k    = rng() % C.rows().size();
    auto kind = rng() % 3;
    std::size_t i = 0;
    auto M = gtest::rebuild(C, [&](Correspondence::CocycleRow& r) {
      if (i++ != k) {
        return true;
      }
      if (kind == 0) {
        return false;  // drop the row
      }
      if (kind == 1) {
        r.gx = (r.gx + 1) % C.edge_count();  // x -> g∘x no longer bijective
        return true;
      }
      r.restriction = C.base().mul(r.restriction, C.base().parse("t"));
      return true;
    });
    auto rep = validateCorrespondence(M, 2);
    if (kind != 2) {
      CHECK_FALSE(rep.ok());
    }
    caught += rep.ok() ? 0 : 1;
    if (!rep.ok()) {
      CHECK_FALSE(rep.violations()[0].witness.empty());
    }
  }
  CHECK(caught >= 40);
}
