#include <catch_amalgamated.hpp>

#include "support.hpp"

using namespace gcorr;

namespace {
  std::string const o2_head = R"(
[groupoid]
kind = set
objects = v

[edges]
a : v <- v
b : v <- v
)";

  Document doc(std::string const& text) {
    return parse_document(text);
  }

  // O_2 on {y0, y1}: a fixes y0, b sends y0 to y1; R = {v}
  std::string const o2_pair = o2_head + R"(
[regular]
R = v

[action pair]
point y0 : v
point y1 : v
mu a y0 = y0
mu b y0 = y1
)";

  // Z/2 flipping a and b, acting on two points by the swap
  std::string const flip = R"(
[groupoid]
kind = group
object = v
elements = e t
mul e e = e
mul e t = t
mul t e = t
mul t t = e

[edges]
a : v <- v
b : v <- v
c : v <- v

[cocycle]
(t, a) -> (b, t)
(t, b) -> (a, t)
(t, c) -> (c, e)

[regular]
R = v

[action swap]
point y0 : v
point y1 : v
act t y0 = y1
act t y1 = y0
mu a y0 = y0
mu b y1 = y1
)";

  std::vector<std::string> names(Correspondence const& C,
                                 std::vector<Point> const& ps) {
    std::vector<std::string> out;
    for (auto const& p : ps) {
      out.push_back(point_name(C, p));
    }
    return out;
  }
}  // namespace

TEST_CASE("validateAction examples") {
  auto const& L = gtest::fixture("loop_z3");
  CHECK(validateAction(L.actions.at(0), L.corr, L.R).ok());

  auto const& O = gtest::fixture("o2_bare");
  CHECK(validateAction(O.actions.at(0), O.corr, O.R).ok());

  RegSet Rv(1, true);
  auto   bad = validateAction(O.actions.at(0), O.corr, Rv);
  REQUIRE(bad.has("cover"));
  CHECK(bad.first("cover")->witness == "y");

  auto P = doc(o2_pair);
  CHECK(validateAction(P.actions.at(0), P.corr, P.R).ok());
  auto F = doc(flip);
  auto rf = validateAction(F.actions.at(0), F.corr, F.R);
  INFO(to_text(rf));
  CHECK(rf.ok());
}

TEST_CASE("composeXY") {
  auto const& L = gtest::fixture("loop_z3");
  auto        xy = composeXY(L.actions.at(0), L.corr);
  CHECK(xy.pairs.size() == 3);
  CHECK(xy.report.ok());

  for (int k = 1; k <= 4; ++k) {
    std::string t = o2_head + "\n[regular]\nR = empty\n\n[action k]\n";
    for (int i = 0; i < k; ++i) {
      t += "point y" + std::to_string(i) + " : v\n";
    }
    auto D = doc(t);
    CHECK(composeXY(D.actions.at(0), D.corr).pairs.size() == std::size_t(2 * k));
  }

  auto F  = doc(flip);
  auto xf = composeXY(F.actions.at(0), F.corr);
  CHECK(xf.pairs.size() == 6);
  CHECK(xf.report.ok());
}

TEST_CASE("universalMap examples") {
  auto const& L = gtest::fixture("loop_z3");
  auto        rl = names(L.corr, universalMap(L.actions.at(0), L.corr, L.R, 5));
  CHECK(rl == std::vector<std::string>(3, "eeeee..."));

  auto const& O = gtest::fixture("o2_bare");
  CHECK(names(O.corr, universalMap(O.actions.at(0), O.corr, O.R, 4))
        == std::vector<std::string>{"[v]"});

  auto S = doc(R"(
[groupoid]
kind = set
objects = v w
[edges]
e1 : v <- w
[regular]
R = v
[action yw]
point yw : w
)");
  CHECK(names(S.corr, universalMap(S.actions.at(0), S.corr, S.R, 3))
        == std::vector<std::string>{"[w]"});

  CHECK_THROWS_AS(universalMap(O.actions.at(0), O.corr, RegSet(1, true), 3),
                  precondition_error);

  auto P = doc(o2_pair);
  CHECK(names(P.corr, universalMap(P.actions.at(0), P.corr, P.R, 3))
        == std::vector<std::string>{"aaa...", "baa..."});
}

TEST_CASE("property: universalMap is prefix coherent and equivariant") {
  std::vector<Document> ds{gtest::fixture("loop_z3"), gtest::fixture("o2_bare"),
                           doc(o2_pair), doc(flip)};
  for (auto const& D : ds) {
    auto const& A = D.actions.at(0);
    INFO(A.name);
    for (std::size_t d = 1; d < 6; ++d) {
      auto lo = universalMap(A, D.corr, D.R, d);
      auto hi = universalMap(A, D.corr, D.R, d + 1);
      for (std::size_t y = 0; y < A.size(); ++y) {
        CHECK(truncate_label(D.corr, hi[y], d) == lo[y]);
      }
      auto tgt = omegaAction(D.corr, D.R, d);
      std::vector<int> phi;
      for (auto const& p : lo) {
        auto i = tgt.trunc.index_of(p);
        REQUIRE(i);
        phi.push_back(int(*i));
      }
      auto eq = checkEquivariant(phi, A, tgt.action, D.corr);
      INFO(to_text(eq.report));
      CHECK(eq.equivariant);
    }
  }
}

TEST_CASE("checkEquivariant: identity yes, inclusion of X.Y no") {
  auto P = doc(o2_pair);
  auto const& A = P.actions.at(0);
  CHECK(checkEquivariant({0, 1}, A, A, P.corr).equivariant);

  auto S = doc(R"(
[groupoid]
kind = set
objects = v w
[edges]
e1 : v <- w
[regular]
R = empty
[action two]
point yw : w
point yv : v
mu e1 yw = yv
)");
  auto const& B = S.actions.at(0);
  REQUIRE(validateAction(B, S.corr, S.R).ok());
  auto [sub, incl] = restrictToImage(B);
  REQUIRE(sub.size() == 1);
  auto r = checkEquivariant(incl, sub, B, S.corr);
  CHECK_FALSE(r.equivariant);
  CHECK(r.report.has("preimage"));
}

TEST_CASE("uniquenessAudit") {
  auto const& L = gtest::fixture("loop_z3");
  auto        u = uniquenessAudit(L.actions.at(0), L.corr, 3);
  CHECK(u.status == "ok");
  CHECK(u.candidates == 64);
  CHECK(u.equivariant == 1);

  auto const& O  = gtest::fixture("o2_bare");
  auto        uo = uniquenessAudit(O.actions.at(0), O.corr, 2);
  CHECK(uo.equivariant == 1);
  REQUIRE(uo.maps.size() == 1);
  CHECK(uniquenessAudit(O.actions.at(0), O.corr, 2).report.ok());

  FiniteAction empty;
  empty.name = "empty";
  empty.mu.assign(2, {});
  auto ue = uniquenessAudit(empty, O.corr, 2);
  CHECK(ue.equivariant == 1);

  auto us = uniquenessAudit(L.actions.at(0), L.corr, 3, 10);
  CHECK(us.status == "skipped");
  CHECK(us.equivariant == 0);
}

TEST_CASE("property: mutations flip the verdict") {
  // dropping any μ pair of the Z/3 loop uncovers its target
  auto const& L = gtest::fixture("loop_z3");
  auto const& A = L.actions.at(0);
  for (auto const& [y, z] : A.mu[0]) {
    auto M = A;
    M.mu[0].erase(y);
    auto r = validateAction(M, L.corr, L.R);
    REQUIRE(r.has("cover"));
    CHECK(r.first("cover")->witness == A.points[z]);
  }
  // redirecting one pair onto another's target breaks injectivity
  for (auto const& [y, z] : A.mu[0]) {
    auto M        = A;
    M.mu[0][y]    = (z + 1) % 3;
    auto r        = validateAction(M, L.corr, L.R);
    CHECK_FALSE(r.ok());
    CHECK(r.has("free"));
  }
  // overlapping images of a and b
  auto P = doc(o2_pair);
  auto M = P.actions.at(0);
  M.mu[1][0] = 0;
  auto r = validateAction(M, P.corr, P.R);
  CHECK(r.has("free"));
  // a trivial G-action no longer intertwines μ_a and μ_b
  auto F  = doc(flip);
  auto MF = F.actions.at(0);
  for (auto& [k, z] : MF.gact) {
    z = k.second;
  }
  CHECK_FALSE(validateAction(MF, F.corr, F.R).ok());
  // a point over the wrong vertex
  auto S = doc(R"(
[groupoid]
kind = set
objects = v w
[edges]
e1 : v <- w
[regular]
R = empty
[action two]
point yw : w
point yv : v
mu e1 yw = yv
)");
  auto MS     = S.actions.at(0);
  MS.mu[0]    = {{1, 0}};
  auto rs     = validateAction(MS, S.corr, S.R);
  CHECK(rs.has("anchor-mu"));
}
