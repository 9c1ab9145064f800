#include <catch_amalgamated.hpp>

#include "support.hpp"

using namespace gcorr;

namespace {
  ISElement el(Correspondence const& C, std::string const& s) {
    return parse_element(C, s);
  }
  Point cyl(Correspondence const& C, std::string const& s) {
    return Point{C.parse_path(s), true};
  }
  std::string img(Correspondence const& C, GermImage const& g) {
    REQUIRE(g.state == Defn::Defined);
    return point_name(C, g.point);
  }
}  // namespace

TEST_CASE("germApply examples") {
  auto const& O = gtest::fixture("o2");
  CHECK(img(O.corr, germApply(O.corr, O.R, el(O.corr, "a * 1_v * a^"),
                              cyl(O.corr, "ab"), 2))
        == "ab...");
  CHECK(germApply(O.corr, O.R, el(O.corr, "a * 1_v * a^"), cyl(O.corr, "ba"),
                  2)
            .state
        == Defn::Undefined);

  auto const& L = gtest::fixture("single_loop");
  for (std::size_t n = 1; n <= 5; ++n) {
    Point w{L.corr.pathsOfLength(n)[0], true};
    auto  g = germApply(L.corr, L.R, el(L.corr, "e * 1_v * [v]^"), w, n);
    CHECK(img(L.corr, g) == point_name(L.corr, w));
  }

  auto const& Z = gtest::fixture("odometer");
  CHECK(img(Z.corr, germApply(Z.corr, Z.R, el(Z.corr, "[v] * z * [v]^"),
                              cyl(Z.corr, "11"), 2))
        == "00...");
}

TEST_CASE("germEquals examples") {
  auto const& O = gtest::fixture("o2");
  CHECK(germEquals(O.corr, O.R, el(O.corr, "a * 1_v * a^"), ISElement::one(),
                   cyl(O.corr, "ab"))
            .kind
        == Verdict::Kind::Equal);

  auto const& Z = gtest::fixture("odometer");
  auto        z = el(Z.corr, "[v] * z * [v]^");
  CHECK(germEquals(Z.corr, Z.R, z, ISElement::one(), cyl(Z.corr, "1")).kind
        == Verdict::Kind::Distinct);
  // z and z^3 agree on the first digit of 0..., the restrictions differ
  auto v = germEquals(Z.corr, Z.R, z, el(Z.corr, "[v] * z^3 * [v]^"),
                      cyl(Z.corr, "0"));
  CHECK(v.kind == Verdict::Kind::Unknown);
  CHECK(v.str() == "UnknownAtDepth(1)");

  CHECK_THROWS_AS(germEquals(O.corr, O.R, el(O.corr, "a * 1_v * a^"),
                             ISElement::one(), cyl(O.corr, "ba")),
                  precondition_error);
}

TEST_CASE("property: graph germ equality is lag plus image") {
  for (auto name : {"o2", "single_loop", "singular"}) {
    INFO(name);
    auto const& d  = gtest::fixture(name);
    auto const& C  = d.corr;
    auto        Es = bounded_elements(C, 2, 0);
    for (auto const& w : buildBoundary(C, d.R, 3).points) {
      for (auto const& s : Es) {
        auto is = germApply(C, d.R, s, w);
        if (!is_prefix(s.q, w.path) || is.state != Defn::Defined) {
          continue;
        }
        for (auto const& t : Es) {
          auto it = germApply(C, d.R, t, w);
          if (!is_prefix(t.q, w.path) || it.state != Defn::Defined) {
            continue;
          }
          auto lag_s = long(s.p.size()) - long(s.q.size());
          auto lag_t = long(t.p.size()) - long(t.q.size());
          bool same  = lag_s == lag_t && is.point == it.point;
          auto v     = germEquals(C, d.R, s, t, w);
          REQUIRE(v.kind != Verdict::Kind::Unknown);
          CHECK((v.kind == Verdict::Kind::Equal) == same);
        }
      }
    }
  }
}

TEST_CASE("property: Equal and Distinct are stable under depth") {
  auto const& Z  = gtest::fixture("odometer");
  auto const& C  = Z.corr;
  auto        Es = bounded_elements(C, 1, 3);
  std::vector<int> digits{1, 0, 1, 1, 0, 1, 0};
  for (auto const& s : Es) {
    for (auto const& t : Es) {
      std::optional<Verdict::Kind> prev;
      for (std::size_t n = 1; n <= digits.size(); ++n) {
        std::string w;
        for (std::size_t i = 0; i < n; ++i) {
          w += std::to_string(digits[i]);
        }
        auto pt = cyl(C, w);
        if (!is_prefix(s.q, pt.path) || !is_prefix(t.q, pt.path)
            || germApply(C, Z.R, s, pt).state == Defn::Undefined
            || germApply(C, Z.R, t, pt).state == Defn::Undefined) {
          continue;
        }
        auto v = germEquals(C, Z.R, s, t, pt).kind;
        if (prev && *prev != Verdict::Kind::Unknown) {
          CHECK(v == *prev);
        }
        prev = v;
      }
    }
  }
}

TEST_CASE("property: germApply respects isgMultiply") {
  for (auto name : {"o2", "odometer", "ep_flip", "singular"}) {
    INFO(name);
    auto const& d  = gtest::fixture(name);
    auto const& C  = d.corr;
    auto        Es = bounded_elements(C, 1, 1);
    std::size_t n  = 3;
    for (auto const& w : buildBoundary(C, d.R, n).points) {
      for (auto const& t : Es) {
        auto tw = germApply(C, d.R, t, w, n);
        if (tw.state != Defn::Defined) {
          continue;
        }
        for (auto const& s : Es) {
          auto stw = germApply(C, d.R, s, tw.point, n);
          auto st  = germApply(C, d.R, isgMultiply(C, s, t), w, n);
          if (stw.state == Defn::Defined && st.state == Defn::Defined) {
            CHECK(stw.point == st.point);
          }
        }
      }
    }
  }
}

TEST_CASE("enumerateArrows examples") {
  auto const& L = gtest::fixture("single_loop");
  auto        T = enumerateArrows(L.corr, L.R, 3, 2, 0);
  REQUIRE(T.objects.points.size() == 1);
  std::set<long> lags;
  for (long j = 0; j <= 2; ++j) {
    for (long k = 0; k <= 2; ++k) {
      lags.insert(j - k);
    }
  }
  CHECK(T.arrows.size() == lags.size());
  CHECK(T.report.ok());

  auto const& S  = gtest::fixture("single_edge");
  auto        TS = enumerateArrows(S.corr, S.R, 2, 1, 0);
  REQUIRE(TS.objects.points.size() == 2);
  CHECK(TS.arrows.size() == 4);
  std::set<std::pair<std::size_t, std::size_t>> ends;
  for (auto const& a : TS.arrows) {
    ends.insert({a.source, a.range});
  }
  CHECK(ends.size() == 4);  // one arrow for each ordered pair: M_2
  CHECK(TS.report.ok());

  auto const& O = gtest::fixture("o2");
  RegSet      none{false};
  auto        TO = enumerateArrows(O.corr, none, 1, 1, 0);
  CHECK(TO.objects.points.size() == 3);
  CHECK(TO.arrows.size() == 5);
  // units plus the swaps a... <-> b...; [v] only carries its unit since
  // its images under (a,1,[v]) are exact paths, not depth-1 labels
  auto v_idx = *TO.objects.index_of(Point{O.corr.parse_path("[v]"), false});
  std::size_t at_v = 0, swaps = 0;
  for (auto const& a : TO.arrows) {
    at_v += (a.source == v_idx || a.range == v_idx);
    swaps += (a.source != a.range);
  }
  CHECK(at_v == 1);
  CHECK(swaps == 2);
}

TEST_CASE("property: enumerated tables satisfy the groupoid axioms") {
  struct Case {
    char const* name;
    std::size_t depth, cap, wordcap;
  };
  for (auto c : {Case{"single_loop", 4, 2, 0}, Case{"single_edge", 2, 1, 0},
                 Case{"o2", 3, 2, 0}, Case{"singular", 3, 2, 0},
                 Case{"odometer", 3, 1, 2}, Case{"ep_flip", 2, 1, 0},
                 Case{"pair_loops", 2, 1, 0}}) {
    INFO(c.name);
    auto const& d = gtest::fixture(c.name);
    auto        T = enumerateArrows(d.corr, d.R, c.depth, c.cap, c.wordcap);
    CHECK(T.report.ok());
    // independent pass over the composition table
    for (auto const& [ab, r] : T.compose) {
      auto const& A = T.arrows[ab.first];
      auto const& B = T.arrows[ab.second];
      CHECK(A.source == B.range);
      CHECK(T.arrows[r].source == B.source);
      CHECK(T.arrows[r].range == A.range);
    }
    for (auto const& [ab, r1] : T.compose) {
      for (std::size_t c3 = 0; c3 < T.arrows.size(); ++c3) {
        auto bc = T.compose.find({ab.second, c3});
        if (bc == T.compose.end()) {
          continue;
        }
        auto l = T.compose.find({r1, c3});
        auto r = T.compose.find({ab.first, bc->second});
        if (l != T.compose.end() && r != T.compose.end()) {
          CHECK(l->second == r->second);
        }
      }
    }
    for (std::size_t o = 0; o < T.objects.points.size(); ++o) {
      REQUIRE(T.unit_of[o].has_value());
      auto u = *T.unit_of[o];
      for (std::size_t a = 0; a < T.arrows.size(); ++a) {
        if (T.arrows[a].source == o) {
          auto it = T.compose.find({a, u});
          if (it != T.compose.end()) {
            CHECK(it->second == a);
          }
        }
      }
    }
  }
}

TEST_CASE("restrictToR") {
  auto const& L = gtest::fixture("single_loop");
  auto        r = restrictToR(L.corr, L.R, 3, 0);
  CHECK(r.ok());
  CHECK(r.fact_value("R_meets_Omega_R") == "no");

  auto const& O = gtest::fixture("o2");
  CHECK(restrictToR(O.corr, RegSet{false}, 3, 0).ok());

  for (auto name : {"pair_loops", "singular", "ep_flip", "odometer"}) {
    auto const& d = gtest::fixture(name);
    auto        rr = restrictToR(d.corr, d.R, 2, 2);
    INFO(name << "\n" << to_text(rr));
    CHECK(rr.ok());
  }
}

TEST_CASE("diagnose") {
  auto const& L = gtest::fixture("single_loop");
  CHECK(diagnose(L.corr, L.R).conditionL == "fails");
  auto const& O  = gtest::fixture("o2");
  auto        dO = diagnose(O.corr, O.R);
  CHECK(dO.conditionL == "holds");
  CHECK(dO.cofinal == "yes");
  CHECK(dO.hausdorff == "yes");
  auto const& Z  = gtest::fixture("odometer");
  auto        dZ = diagnose(Z.corr, Z.R, 6, 2);
  CHECK(dZ.witnesses.empty());
  CHECK(dZ.conditionL == "n/a");
}
