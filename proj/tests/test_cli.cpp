#include <doctest.h>

#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "qdilog/cli.hpp"
#include "qdilog/errors.hpp"
#include "qdilog/seed_io.hpp"

using namespace qdilog;
using json = nlohmann::json;

namespace {

struct Run {
  int code;
  json report;
  std::string text;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "qdilog");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  json rep;
  try {
    rep = json::parse(out.str());
  } catch (const json::parse_error&) {
  }
  return {code, rep, out.str()};
}

}  // namespace

TEST_CASE("mutate A1 inverts y") {
  const auto r = run({"mutate", "--builtin", "A1", "--y", "5"});
  CHECK(r.code == 0);
  const auto& t = r.report["table"];
  REQUIRE(t.size() == 3);
  CHECK(t[0]["y"][0] == "5");
  CHECK(t[1]["y"][0] == "1/5");
  CHECK(t[2]["y"][0] == "5");
}

TEST_CASE("mutate A2 at y = (1, 1)") {
  const auto r = run({"mutate", "--builtin", "A2", "--y", "1,1"});
  CHECK(r.code == 0);
  const auto& t = r.report["table"];
  REQUIRE(t.size() == 6);
  // y(2) = (1, 2), y(3) = (3, 1/2)... checked against the exchange relation directly.
  CHECK(t[1]["y"] == json::array({"1", "2"}));
  CHECK(r.report["n_plus"] == 2);
  CHECK(r.report["n_minus"] == 3);
}

TEST_CASE("exit codes") {
  CHECK(run({"verify", "classical", "--builtin", "A2", "--trials", "20"}).code == 0);
  CHECK(run({"verify", "classical", "--builtin", "A2", "--sequence", "1,2,1"}).code == 2);
  CHECK(run({"verify", "classical", "--builtin", "A7"}).code == 4);
  CHECK(run({"mutate", "--builtin", "A2", "--y", "1"}).code == 4);
  CHECK(run({"mutate", "--builtin", "A2", "--y", "1,-1"}).code == 4);
  CHECK(run({"nonsense"}).code == 4);
  CHECK(run({"verify", "classical", "--builtin", "A2", "--tol", "1e-30"}).code == 1);
  CHECK(run({"--help"}).code == 0);
  const auto nap = run({"verify", "saddle", "--builtin", "A2", "--sequence", "1,2"});
  CHECK(nap.code == 2);
  CHECK(nap.report["verdict"] == "NOT_A_PERIOD");
  CHECK(nap.report["exit_code"] == 2);
}

TEST_CASE("quantum commands on A2") {
  CHECK(run({"verify", "quantum-tropical", "--builtin", "A2", "-N", "6"}).code == 0);
  CHECK(run({"verify", "quantum-universal", "--builtin", "A2", "-N", "5"}).code == 0);
  CHECK(run({"verify", "dual", "--builtin", "A2", "-N", "5"}).code == 0);
  CHECK(run({"verify", "shuffle", "--builtin", "A2", "--sequence", "1,2,1", "-N", "5"}).code == 0);
  CHECK(run({"verify", "quantum-tropical", "--builtin", "A2", "-N", "6", "--q0", "3/7"}).code == 0);
  CHECK(run({"verify", "quantum-tropical", "--builtin", "A2", "-N", "6", "--q0", "0"}).code == 4);
}

TEST_CASE("saddle and search commands") {
  CHECK(run({"verify", "saddle", "--builtin", "A2", "--trials", "5"}).code == 0);
  CHECK(run({"verify", "saddle-lambda", "--builtin", "A2", "--trials", "3"}).code == 0);
  const auto s = run({"search", "--builtin", "A2", "--depth", "5"});
  CHECK(s.code == 0);
  bool found = false;
  for (const auto& row : s.report["table"]) {
    if (row["sequence"] == json::array({1, 2, 1, 2, 1})) found = true;
  }
  CHECK(found);
}

TEST_CASE("phib command") {
  CHECK(run({"phib", "--check", "duality", "--b", "1.3"}).code == 0);
  CHECK(run({"phib", "--check", "value", "--b", "0.8", "--z", "0.1"}).code == 0);
  CHECK(run({"phib", "--check", "value", "--b", "0.8", "--z", "0.1i"}).code == 4);
}

TEST_CASE("output formats") {
  const auto md = run({"verify", "classical", "--builtin", "A2", "--trials", "3", "--format", "md"});
  CHECK(md.code == 0);
  CHECK(md.text.find("|") != std::string::npos);
  const auto csv = run({"mutate", "--builtin", "A1", "--format", "csv"});
  CHECK(csv.code == 0);
  CHECK(csv.text.rfind("t,", 0) == 0);
}

TEST_CASE("parse_complex") {
  CHECK(parse_complex("1.3") == std::complex<double>(1.3, 0));
  CHECK(parse_complex("0.9+0.4i") == std::complex<double>(0.9, 0.4));
  CHECK(parse_complex("0.9-0.4i") == std::complex<double>(0.9, -0.4));
  CHECK(parse_complex("-0.2i") == std::complex<double>(0, -0.2));
  CHECK(parse_complex("0.9,0.4") == std::complex<double>(0.9, 0.4));
  CHECK_THROWS_AS(parse_complex("abc"), SpecParseError);
  CHECK_THROWS_AS(parse_complex(""), SpecParseError);
}

TEST_CASE("seed JSON") {
  const auto s = parse_seed_json(R"({"n": 2, "B": [[0,-1],[1,0]], "sequence": [1,2,1,2,1], "nu": [2,1]})");
  CHECK(s.matrix == builtin_seed("A2").matrix);
  CHECK(s.schedule.sequence == std::vector<std::size_t>{0, 1, 0, 1, 0});
  CHECK(s.schedule.nu == std::vector<std::size_t>{1, 0});
  const auto back = parse_seed_json(seed_to_json(s));
  CHECK(back.matrix == s.matrix);
  CHECK(back.schedule.nu == s.schedule.nu);
  const auto id = parse_seed_json(R"({"n": 1, "B": [[0]], "sequence": [1,1]})");
  CHECK(id.schedule.nu == std::vector<std::size_t>{0});
  CHECK_THROWS_AS(parse_seed_json("{"), SpecParseError);
  CHECK_THROWS_AS(parse_seed_json(R"({"n": 2, "B": [[0,1],[1,0]], "sequence": [1]})"), SpecParseError);
  CHECK_THROWS_AS(parse_seed_json(R"({"n": 2, "B": [[0,-1],[1,0]], "sequence": [3]})"), SpecParseError);
  CHECK_THROWS_AS(parse_seed_json(R"({"n": 2, "B": [[0,-1],[1,0]], "sequence": [1], "nu": [1,1]})"),
                  SpecParseError);
  CHECK_THROWS_AS(builtin_seed("D4"), SpecParseError);
  CHECK_THROWS_AS(load_seed_file("/nonexistent/seed.json"), SpecParseError);
}
