#include <doctest.h>

#include <fstream>
#include <sstream>
#include <string>

#include "cli.hpp"

using namespace strongrate_cli;

namespace {
template <class... A>
Command parse(A... a) {
  const char* argv[] = {"strongrate", a...};
  return parse_args(static_cast<int>(sizeof...(A)) + 1, argv);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}
}  // namespace

TEST_CASE("flags map onto the resolved config") {
  const Command c = parse("rate", "--s", "0.75", "--n-list", "16,32,64", "--reps", "1000", "--seed", "7");
  CHECK(c.verb == "rate");
  CHECK(c.config.at("s") == 0.75);
  CHECK(c.config.at("n_list") == nlohmann::json({16, 32, 64}));
  CHECK(c.config.at("reps") == 1000);
  CHECK(c.config.at("seed") == 7);
  CHECK(parse("kappa").config.at("seed") == 42);
}

TEST_CASE("usage errors") {
  CHECK_THROWS_AS(parse("rate", "--s", "1.2"), UsageError);
  try {
    parse("rate", "--s", "1.2");
  } catch (const UsageError& e) {
    CHECK(std::string(e.what()).find("(1/2, 1)") != std::string::npos);
  }
  CHECK_THROWS_AS(parse(), UsageError);
  CHECK_THROWS_AS(parse("rate", "--frobnicate", "3"), UsageError);
  CHECK_THROWS_AS(parse("rate", "--n-list", "16,,32"), UsageError);
  CHECK_THROWS_AS(parse("rate", "--n-list", "16,3x"), UsageError);
  CHECK_THROWS_AS(parse("rate", "--format", "xml"), UsageError);
  CHECK_THROWS_AS(parse("dance"), UsageError);
  const char* argv[] = {"strongrate"};
  CHECK(main_entry(1, argv) == kExitUsage);
}

TEST_CASE("lists") {
  CHECK(parse_int_list("8,16") == std::vector<int>{8, 16});
  CHECK(parse_real_list("0.5,0.25") == std::vector<double>{0.5, 0.25});
  CHECK_THROWS_AS(parse_int_list(""), UsageError);
  CHECK_THROWS_AS(parse_real_list("0.5,"), UsageError);
}

TEST_CASE("config file, flag precedence and report round trip") {
  {
    std::ofstream f("cli_cfg.json");
    f << R"({"drift":"hat","reps":200,"n_list":[8,16,32],"seed":9})";
  }
  const Command c = parse("rate", "--config", "cli_cfg.json", "--seed", "11", "--out", "cli_run", "--threads", "2");
  CHECK(c.config.at("drift") == "hat");
  CHECK(c.config.at("seed") == 11);
  REQUIRE(run(c) == kExitOk);
  const std::string first = slurp("cli_run.json");
  const Command again = parse("rate", "--config", "cli_run.json", "--out", "cli_run2", "--threads", "1");
  REQUIRE(run(again) == kExitOk);
  CHECK(slurp("cli_run2.json") == first);
  CHECK(slurp("cli_run2.csv") == slurp("cli_run.csv"));
  CHECK(first.find("threads") == std::string::npos);
  CHECK(first.find("wall") == std::string::npos);
}

TEST_CASE("experiment failures exit with 1") {
  const Command c = parse("transform-check", "--drift", "constant=1", "--out", "cli_fail");
  CHECK(run(c) == kExitFailure);
  const Command bad_out = parse("rate", "--drift", "zero", "--reps", "100", "--out", "/nonexistent-dir/r");
  CHECK(run(bad_out) == kExitFailure);
}
