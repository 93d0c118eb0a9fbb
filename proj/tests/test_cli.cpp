#include <doctest.h>

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ncr/cli.hpp"

using namespace ncr;

namespace {

struct RunOutcome {
  int code;
  std::string out;
  std::string err;
};

RunOutcome run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = cli_run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("stream spec grammar") {
  CHECK(streamspec_parse("zeros", nullptr).prefix(3).str() == "000");
  CHECK(streamspec_parse("ones", nullptr).prefix(3).str() == "111");
  CHECK(streamspec_parse("alt", nullptr).prefix(4).str() == "0101");
  CHECK(streamspec_parse("periodic:110", nullptr).prefix(7).str() ==
        "1101101");
  CHECK_THROWS_AS(streamspec_parse("noise", nullptr), ParseError);

  std::ofstream f("cli_stream_test.txt");
  f << "0101\n";
  f.close();
  std::ostringstream warn;
  BitStream s = streamspec_parse("file:cli_stream_test.txt", &warn);
  CHECK(s.prefix(6).str() == "010111");
  CHECK(warn.str().find("warning") != std::string::npos);
}

TEST_CASE("measure and modulus spec grammars") {
  CHECK(measurespec_parse("lebesgue")->spec().at("kind") == "lebesgue");
  CHECK(measurespec_parse("bernoulli:1/2^2")->spec().at("p") == "1/2^2");
  CHECK(measurespec_parse(R"({"kind":"lebesgue"})")->spec().at("kind") ==
        "lebesgue");
  CHECK(modulusspec_parse("poly:3").describe() == "poly(3)");
  CHECK(modulusspec_parse("exp").describe() == "exp");
  CHECK(modulusspec_parse("table:1,2,3").eval_small(2) == 3);
}

TEST_CASE("table command and lebesgue identity row") {
  auto r = run({"table", "--measure", "lebesgue", "--depth", "8"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  std::vector<std::size_t> h = j.at("h");
  for (std::size_t l = 0; l < h.size(); ++l) CHECK(h[l] == l);
  std::vector<std::size_t> g = j.at("g");
  REQUIRE(!g.empty());
  CHECK(g[0] == 1);
}

TEST_CASE("exit code discipline") {
  CHECK(run({"table", "--measure", "lebesgue", "--depth", "0"}).code == 2);
  CHECK(run({"bogus"}).code == 2);
  CHECK(run({"table", "--measure", "not-a-measure"}).code == 2);
  CHECK(run({"verify", "--suite", "core"}).code == 0);
}

TEST_CASE("rea demo reproduces the worked example") {
  std::ofstream f("cli_op_test.json");
  f << R"({"rules":[{"j":1,"prefix":"","s":37},
           {"j":3,"prefix":"","s":134},{"j":4,"prefix":"","s":28}]})";
  f.close();
  auto r = run({"rea", "demo", "--op", "cli_op_test.json", "--oracle", "ones",
                "--imax", "4"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("f") == nlohmann::json({37, 134, 1, 134}));
  CHECK(j.at("truncated") == true);
}

TEST_CASE("selfmod and nscr commands run") {
  auto r = run({"selfmod", "build", "--modulus", "poly:1", "--stream", "alt",
                "--blocks", "2"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("lengths") == nlohmann::json({"3", "9", "21"}));

  auto c = run({"nscr", "classify", "--modulus", "poly:1", "--sigma", "101"});
  REQUIRE(c.code == 0);
  auto cj = nlohmann::json::parse(c.out);
  CHECK(cj.at("on_tree") == true);
  CHECK(cj.at("completed_blocks") == 1);
  CHECK(cj.at("mass") == "1/2^1");
}

TEST_CASE("byte reproducibility under a fixed seed") {
  std::vector<std::vector<std::string>> cases = {
      {"table", "--measure", "bernoulli:1/2^2", "--depth", "8"},
      {"verify", "--suite", "roundtrips", "--seed", "9"},
      {"selfmod", "tk", "--level", "2", "--sigma-max", "4", "--depth", "64",
       "--tight"},
      {"test", "build-cover", "--level", "2", "--stream", "alt", "--count",
       "6", "--depth", "100", "--tight"},
  };
  for (const auto& args : cases) {
    auto first = run(args);
    auto second = run(args);
    REQUIRE(first.code == 0);
    CHECK(first.out == second.out);
    CHECK(first.code == second.code);
  }
}
