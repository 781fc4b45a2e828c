#include <doctest.h>

#include "strongrate/config.hpp"
#include "strongrate/error.hpp"

using namespace strongrate;
using nlohmann::json;

TEST_CASE("per-verb defaults") {
  const RunConfig r = resolve_config("rate", json::object());
  CHECK(r.seed == 42);
  CHECK(r.n_list.front() == 16);
  CHECK(r.n_list.back() == 1024);
  CHECK(r.fine_steps == 1 << 14);
  const RunConfig k = resolve_config("kappa", json::object());
  CHECK(k.reps == 100000);
  CHECK(k.fine_steps == 1 << 12);
  const RunConfig o = resolve_config("occupation", json::object());
  CHECK(o.deltas.size() == 5);
  CHECK(o.deltas.front() == 1.0 / 128);
  CHECK(resolve_config("sobolev", json::object()).order == 0.75);
  CHECK(resolve_config("sobolev", json{{"drift", "indicator"}}).order == 0.4);
}

TEST_CASE("overrides and validation") {
  const RunConfig r = resolve_config("rate", json{{"s", 0.6}, {"n_list", {16, 32, 64}}, {"seed", 7}});
  CHECK(r.s == 0.6);
  CHECK(r.seed == 7);
  CHECK_THROWS_AS(resolve_config("rate", json{{"s", 1.2}}), DomainError);
  CHECK_THROWS_AS(resolve_config("rate", json{{"bogus", 1}}), ConfigError);
  CHECK_THROWS_AS(resolve_config("rate", json{{"reps", "many"}}), ConfigError);
  CHECK_THROWS_AS(resolve_config("rate", json{{"n_list", {64, 32}}}), ConfigError);
  CHECK_THROWS_AS(resolve_config("rate", json{{"fine_steps", 1024}}), ConfigError);
  CHECK_THROWS_AS(resolve_config("launch", json::object()), ConfigError);
  CHECK_THROWS_AS(resolve_config("couple", json{{"verb", "rate"}}), ConfigError);
}

TEST_CASE("the resolved config round trips, also through a report") {
  const RunConfig a = resolve_config("occupation", json{{"xi", 0.25}, {"reps", 500}});
  const auto j = a.to_json();
  const RunConfig b = resolve_config("occupation", j);
  CHECK(b.to_json() == j);
  const RunConfig c = resolve_config("occupation", json{{"config", j}, {"results", json::array()}});
  CHECK(c.to_json() == j);
  CHECK_FALSE(j.contains("threads"));
}
