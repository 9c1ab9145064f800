#include <catch_amalgamated.hpp>

#include "support.hpp"

using namespace gcorr;

TEST_CASE("set groupoids have units only") {
  auto G1 = makeSetGroupoid({"v"});
  CHECK(G1.object_count() == 1);
  CHECK(G1.arrow_count() == 1);
  CHECK(validate(G1).ok());

  auto G0 = makeSetGroupoid({});
  CHECK(G0.object_count() == 0);
  CHECK(G0.arrow_count() == 0);
  CHECK(validate(G0).ok());

  auto G2 = makeSetGroupoid({"u", "w"});
  CHECK(G2.object_count() == 2);
  CHECK(G2.arrow_count() == 2);
  CHECK(G2.only_units());

  CHECK_THROWS_AS(makeSetGroupoid({"u", "u"}), input_error);
}

TEST_CASE("group groupoids") {
  auto Z2 = gtest::cyclic(2);
  CHECK(Z2.object_count() == 1);
  CHECK(Z2.arrow_count() == 2);
  CHECK(validate(Z2).ok());

  // Z/4: every one of the 4^3 triples is composable and associates
  auto Z4 = gtest::cyclic(4);
  int  triples = 0;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      for (int c = 0; c < 4; ++c) {
        ++triples;
        CHECK(Z4.compose(Z4.compose(a, b), c) == (a + b + c) % 4);
        CHECK(Z4.compose(a, Z4.compose(b, c)) == (a + b + c) % 4);
      }
    }
  }
  CHECK(triples == 64);
  CHECK(validate(Z4).ok());
}

TEST_CASE("non-group tables name the failed axiom") {
  // {e, a} with aa = a is an associative monoid without inverses
  try {
    (void)makeGroupGroupoid({"e", "a"}, {{"e", "a"}, {"a", "a"}});
    FAIL("expected an error");
  } catch (input_error const& e) {
    CHECK(std::string(e.what()).find("inverse axiom") != std::string::npos);
  }
  try {
    (void)makeGroupGroupoid({"e", "a"}, {{"e", "a"}, {"a", "x"}});
    FAIL("expected an error");
  } catch (input_error const& e) {
    CHECK(std::string(e.what()).find("closure") != std::string::npos);
  }
  // a·a = e, a·e = e: not associative ((a a) a = a, a (a a) = e)
  try {
    (void)makeGroupGroupoid({"e", "a"}, {{"e", "a"}, {"e", "e"}});
    FAIL("expected an error");
  } catch (input_error const& e) {
    CHECK(std::string(e.what()).find("axiom") != std::string::npos);
  }
}

TEST_CASE("validate reports tampering") {
  auto Z2 = gtest::cyclic(2);
  CHECK(validate(Z2).ok());

  auto Z3 = gtest::cyclic(3);
  Z3.set_compose(1, 1, 0);  // should be 2
  auto r = validate(Z3);
  CHECK(r.has("associativity"));

  FiniteGroupoid G({"v"}, {{"1_v", {"v", "v"}}});
  G.set_compose(0, 0, 0);
  G.set_inverse(0, 0);
  auto r2 = validate(G);
  CHECK(r2.has("unit"));
  CHECK(r2.first("unit")->witness == "v");
}

TEST_CASE("property: valid groupoids pass, validate is idempotent") {
  std::vector<FiniteGroupoid> gs;
  for (int n = 1; n <= 6; ++n) {
    gs.push_back(gtest::cyclic(n));
  }
  gs.push_back(gtest::symmetric3());
  for (int k = 1; k <= 3; ++k) {
    for (int m = 1; m <= 3; ++m) {
      gs.push_back(gtest::pair_times_cyclic(k, m));
    }
  }
  for (auto const& G : gs) {
    auto a = validate(G);
    auto b = validate(G);
    CHECK(a.ok());
    CHECK(to_text(a) == to_text(b));
  }
}

TEST_CASE("property: one wrong product in a group table is always caught") {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 200; ++round) {
    int  n = 2 + static_cast<int>(rng() % 5);
    auto G = gtest::cyclic(n);
    int  a = static_cast<int>(rng() % n), b = static_cast<int>(rng() % n);
    int  c = (G.compose(a, b) + 1 + static_cast<int>(rng() % (n - 1))) % n;
    G.set_compose(a, b, c);
    auto r = validate(G);
    REQUIRE_FALSE(r.ok());
    CHECK_FALSE(r.violations()[0].witness.empty());
  }
}

TEST_CASE("property: wrong inverse in a pair groupoid is caught") {
  auto G = gtest::pair_times_cyclic(2, 3);
  std::mt19937_64 rng(11);
  for (int round = 0; round < 50; ++round) {
    auto H = G;
    int  g = static_cast<int>(rng() % H.arrow_count());
    int  bad = -1;
    for (int h = 0; h < static_cast<int>(H.arrow_count()); ++h) {
      if (h != H.inverse(g) && H.arrow(h).src == H.arrow(g).rng
          && H.arrow(h).rng == H.arrow(g).src) {
        bad = h;
        break;
      }
    }
    H.set_inverse(g, bad);
    CHECK(validate(H).has("inverse"));
  }
}
