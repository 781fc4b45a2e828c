#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>

#include <json.hpp>

#include "strongrate/strongrate.h"

TEST_CASE("scalar evaluations") {
  double v = 0.0;
  REQUIRE(sr_eval_h(0.75, 0.0, &v) == SR_OK);
  CHECK(v == doctest::Approx(std::exp(-1.25)));
  REQUIRE(sr_eval_mu_s(0.75, 1.0, &v) == SR_OK);
  CHECK(std::abs(v - 0.214472503695793494) <= 2e-6);
  CHECK(sr_eval_h(1.5, 0.0, &v) == SR_ERR_DOMAIN);
  CHECK(std::strstr(sr_last_error(), "(1/2, 1)") != nullptr);
  CHECK(sr_eval_h(0.75, 0.0, nullptr) == SR_ERR_INVALID_ARGUMENT);
}

TEST_CASE("drift and transform handles") {
  sr_drift* d = nullptr;
  REQUIRE(sr_drift_create("indicator", 0.75, &d) == SR_OK);
  double v = -1.0;
  int finite = 0;
  REQUIRE(sr_drift_eval(d, 0.5, &v) == SR_OK);
  CHECK(v == 1.0);
  REQUIRE(sr_drift_l1_norm(d, &v, &finite) == SR_OK);
  CHECK(finite == 1);
  CHECK(v == 1.0);
  sr_transform* t = nullptr;
  REQUIRE(sr_transform_create(d, 4.0, 0.0, &t) == SR_OK);
  REQUIRE(sr_transform_G(t, 1.0, &v) == SR_OK);
  CHECK(std::abs(v - (1.0 - std::exp(-2.0)) / 2.0) <= 1e-6);
  double back = 0.0;
  REQUIRE(sr_transform_Ginv(t, v, &back) == SR_OK);
  CHECK(back == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(sr_transform_G(t, 50.0, &v) == SR_ERR_OUT_OF_RANGE);
  sr_transform_destroy(t);
  sr_drift_destroy(d);

  sr_drift* c = nullptr;
  REQUIRE(sr_drift_create("constant=2", 0.75, &c) == SR_OK);
  REQUIRE(sr_drift_l1_norm(c, &v, &finite) == SR_OK);
  CHECK(finite == 0);
  CHECK(std::isinf(v));
  CHECK(sr_transform_create(c, 4.0, 0.0, &t) == SR_ERR_DOMAIN);
  CHECK(t == nullptr);
  sr_drift_destroy(c);
  CHECK(sr_drift_create("wiggle", 0.75, &c) == SR_ERR_INVALID_ARGUMENT);
}

TEST_CASE("config resolution and runs") {
  char* text = nullptr;
  REQUIRE(sr_config_resolve("rate", R"({"drift":"zero","reps":100})", &text) == SR_OK);
  const auto j = nlohmann::json::parse(text);
  sr_string_free(text);
  CHECK(j.at("seed") == 42);
  CHECK(sr_config_resolve("rate", "{not json", &text) == SR_ERR_INVALID_ARGUMENT);

  sr_report* r = nullptr;
  REQUIRE(sr_run("rate", R"({"drift":"zero","reps":100,"n_list":[16,32,64]})", &r) == SR_OK);
  CHECK(std::string(sr_report_summary(r)) == "rate: exact (errors all zero)");
  CHECK(std::string(sr_report_csv(r)).starts_with("n,error,stderr,reps\n16,0,0,100\n"));
  const auto rep = nlohmann::json::parse(sr_report_json(r));
  CHECK(rep.at("config").at("drift") == "zero");
  CHECK(sr_report_wall_seconds(r) >= 0.0);
  CHECK(sr_report_write(r, "/nonexistent-dir/x", "both") == SR_ERR_IO);
  CHECK(sr_report_write(r, "capi_report", "yaml") == SR_ERR_INVALID_ARGUMENT);
  sr_report_destroy(r);
}
