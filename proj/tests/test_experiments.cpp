#include <doctest.h>

#include <cmath>

#include "strongrate/error.hpp"
#include "strongrate/experiments.hpp"
#include "strongrate/parallel.hpp"
#include "support.hpp"

using namespace strongrate;

namespace {
ExperimentConfig small(DriftKind kind) {
  ExperimentConfig c;
  c.drift = kind;
  c.n_list = {8, 16, 32};
  c.fine_steps = 1 << 14;
  c.reps = 100;
  return c;
}
}  // namespace

TEST_CASE("config validation") {
  ExperimentConfig c = small(drift_kind::Zero{});
  c.fine_steps = 256;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = small(drift_kind::Zero{});
  c.reps = 50;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = small(drift_kind::Zero{});
  c.n_list = {16, 8};
  CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("kappa quadrature oracle") {
  const double k = kappa_quadrature();
  CHECK(k > 0.0);
  CHECK(std::abs(k - 0.141470499066782513) <= 1e-8);
  // 1e6-cell Riemann sum, independent of the quadrature.
  CHECK(std::abs(k - 0.14147080777432103) / k < 5e-5);
}

TEST_CASE("kappa at z = 0 vanishes") {
  const KappaReport r = kappa_mc(0.0, 100, 1024, 42, 1);
  CHECK(r.mc_value == 0.0);
  CHECK(r.max_abs_kappa == 0.0);
}

TEST_CASE("kappa respects the bound on every replication") {
  const KappaReport r = kappa_mc(3.0, 500, 1024, 42, 1);
  CHECK(r.bound_violations == 0);
  CHECK(r.mc_value > 0.0);
}

TEST_CASE("zero drift: euler and coupling errors are exactly zero") {
  const EulerRateResult e = estimate_euler_rate(small(drift_kind::Zero{}));
  CHECK(e.series.exact);
  for (const auto& x : e.series.entries) CHECK(x.error == 0.0);
  ExperimentConfig cc = small(drift_kind::Zero{});
  const CouplingResult c = estimate_coupling_distance(cc);
  CHECK(c.series.exact);
  for (const auto& x : c.series.entries) CHECK(x.error == 0.0);
}

TEST_CASE("coupling with pi equal to the fine grid gives distance zero") {
  ExperimentConfig c = small(drift_kind::Hat{});
  c.fine_steps = 512;
  const CouplingResult r = estimate_coupling_distance(c, [&](int) { return TimeGrid::uniform(512); });
  for (const auto& x : r.series.entries) CHECK(x.error == 0.0);
}

TEST_CASE("fooling bound is half the distance") {
  ExperimentConfig c = small(drift_kind::Hat{});
  const CouplingResult r = estimate_coupling_distance(c);
  REQUIRE(r.fooling_bound.size() == r.series.entries.size());
  for (std::size_t i = 0; i < r.fooling_bound.size(); ++i) {
    CHECK(r.series.entries[i].error > 0.0);
    CHECK(r.fooling_bound[i] == 0.5 * r.series.entries[i].error);
  }
}

TEST_CASE("results do not depend on the worker count") {
  ExperimentConfig c = small(drift_kind::Indicator01{});
  c.workers = 1;
  const EulerRateResult a = estimate_euler_rate(c);
  c.workers = 5;
  const EulerRateResult b = estimate_euler_rate(c);
  REQUIRE(a.series.entries.size() == b.series.entries.size());
  for (std::size_t i = 0; i < a.series.entries.size(); ++i) {
    CHECK(a.series.entries[i].error == b.series.entries[i].error);
    CHECK(a.series.entries[i].std_error == b.series.entries[i].std_error);
  }
}

TEST_CASE("occupation mismatch vanishes for the zero drift") {
  const DriftSpec zero = make_drift(drift_kind::Zero{});
  const OccupationResult r = occupation_mismatch(zero, 0.0, 0.0, {0.125, 0.25, 0.5}, 100, 1024, 42, 1);
  for (const auto& e : r.entries) CHECK(e.second_moment == 0.0);
}

TEST_CASE("decay check on a small probe set") {
  const DecayCheck d = check_mu_s_decay({}, 1.0, 50.0, 40);
  CHECK(d.probes == 40);
  CHECK(d.violations == 0);
  CHECK(d.max_even_gap <= 2e-6);
}

TEST_CASE("parallel_for covers every index and rethrows") {
  std::vector<int> hit(1000, 0);
  parallel_for(hit.size(), 3, [&](std::size_t i) { hit[i] += 1; });
  for (int h : hit) REQUIRE(h == 1);
  CHECK_THROWS_AS(parallel_for(100, 2, [](std::size_t i) {
                    if (i == 57) throw GridError("boom");
                  }),
                  GridError);
}
