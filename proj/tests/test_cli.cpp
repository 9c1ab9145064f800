#include <catch_amalgamated.hpp>

#include <sstream>

#include "gcorr/cli.hpp"
#include "support.hpp"

using namespace gcorr;

namespace {
  struct Run {
    int         code;
    std::string out, err;
  };

  Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "gcorr");
    std::vector<char const*> argv;
    for (auto const& a : args) {
      argv.push_back(a.c_str());
    }
    std::ostringstream out, err;
    int code = run_cli(int(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
  }

  std::string inst(std::string const& n) {
    return std::string(GCORR_INSTANCES) + "/" + n + ".gcd";
  }
}  // namespace

TEST_CASE("paths on O_2") {
  auto r = run({"paths", inst("o2"), "--depth", "3"});
  CHECK(r.code == 0);
  CHECK(r.out.find("total: 15") != std::string::npos);
  auto m  = run({"paths", inst("o2"), "--depth", "3", "--format", "machine"});
  auto rs = read_records(m.out);
  CHECK(std::count_if(rs.begin(), rs.end(),
                      [](Record const& x) { return x.type == "path"; })
        == 15);
}

TEST_CASE("ck on O_2") {
  auto r = run({"ck", inst("o2"), "--depth", "3"});
  CHECK(r.code == 0);
  CHECK(r.out.find("defect support: level 0 only") != std::string::npos);
}

TEST_CASE("exit codes") {
  auto b = run({"validate", inst("broken_cocycle")});
  CHECK(b.code == 1);
  CHECK(b.out.find("(z^2, 1)") != std::string::npos);
  CHECK(run({"validate", inst("o2")}).code == 0);
  CHECK(run({"validate", inst("o2"), "--bogus"}).code == 2);
  CHECK(run({"frobnicate", inst("o2")}).code == 2);
  CHECK(run({"validate", "/nonexistent.gcd"}).code == 2);
  auto bad = run({"validate", std::string(GCORR_INSTANCES)
                                  + "/conformance/invalid_section.gcd"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("line 4") != std::string::npos);
  CHECK(run({"paths", inst("o2"), "--format", "xml"}).code == 2);
  CHECK(run({"germ", inst("o2")}).code == 2);  // missing --op
  CHECK(run({"action-validate", inst("o2_bare")}).code == 0);
}

TEST_CASE("flag precedence: flag over document over default") {
  // single_edge sets depth = 2
  auto d = run({"paths", inst("single_edge"), "--format", "machine"});
  auto f = run({"paths", inst("single_edge"), "--depth", "1", "--format",
                "machine"});
  auto o = run({"paths", inst("o2"), "--format", "machine"});
  CHECK(read_records(d.out).back().get("total") == "3");
  CHECK(read_records(f.out).back().get("total") == "3");
  CHECK(read_records(o.out).back().get("total") == "127");
}

TEST_CASE("machine output parses and is deterministic") {
  std::vector<std::vector<std::string>> cmds{
      {"validate", inst("odometer")},
      {"paths", inst("o3"), "--depth", "2"},
      {"omega", inst("o2"), "--depth", "3", "--seed", "5", "--triples", "10"},
      {"boundary", inst("singular"), "--depth", "3"},
      {"isg", inst("o2"), "--word", "a^ a b"},
      {"isg", inst("o2"), "--lhs", "a * 1_v * [v]^", "--rhs",
       "[v] * 1_v * a^"},
      {"isg", inst("odometer"), "--lhs", "1 * z * 1^"},
      {"germ", inst("odometer"), "--op", "[v] * z * [v]^", "--point", "11",
       "--depth", "2"},
      {"model", inst("single_edge")},
      {"diagnose", inst("single_loop"), "--depth", "4"},
      {"fock", inst("o2"), "--depth", "3"},
      {"fock", inst("o2"), "--depth", "2", "--op", "a * 1_v * [v]^"},
      {"ck", inst("single_loop"), "--depth", "3"},
      {"crosscheck", inst("single_edge"), "--depth", "3"},
      {"action-validate", inst("loop_z3")},
      {"universal-map", inst("loop_z3"), "--depth", "5"},
      {"uniqueness", inst("o2_bare")},
  };
  for (auto c : cmds) {
    c.push_back("--format");
    c.push_back("machine");
    INFO(c[0] << " " << c[1]);
    auto r1 = run(c), r2 = run(c);
    CHECK(r1.code == 0);
    CHECK(r1.out == r2.out);
    auto rs = read_records(r1.out);
    CHECK(!rs.empty());
    CHECK(write_records(rs) == r1.out);
  }
  auto g = run({"germ", inst("odometer"), "--op", "[v] * z * [v]^", "--point",
                "11", "--depth", "2", "--format", "machine"});
  CHECK(g.out.find("00...") != std::string::npos);
  auto u = run({"universal-map", inst("loop_z3"), "--depth", "5", "--format",
                "machine"});
  for (auto const& rec : read_records(u.out)) {
    if (rec.type == "map") {
      CHECK(rec.get("image") == "eeeee...");
    }
  }
}
