#include <doctest.h>

#include <cmath>

#include "strongrate/error.hpp"
#include "strongrate/noise.hpp"
#include "strongrate/rng.hpp"
#include "strongrate/solver.hpp"
#include "strongrate/transform.hpp"
#include "support.hpp"

using namespace strongrate;

TEST_CASE("zero drift is exact") {
  const TimeGrid fine = TimeGrid::uniform(1 << 14);
  const Path w = sample_brownian(fine, RngStream{1});
  const DriftSpec zero = make_drift(drift_kind::Zero{});
  const SdePath ref = reference_solution(zero, 0.7, fine, w);
  const SdePath e = euler_additive(zero, 0.7, 16, fine, w);
  CHECK(ref.terminal() == e.terminal());
  CHECK(ref.terminal() == 0.7 + w.back());
}

TEST_CASE("constant drift is exact") {
  const TimeGrid fine = TimeGrid::uniform(1 << 14);
  const Path w = sample_brownian(fine, RngStream{2});
  const DriftSpec c = make_drift(drift_kind::Constant{0.5});
  const SdePath ref = reference_solution(c, 0.0, fine, w);
  for (int n : {16, 64, 1024}) CHECK(euler_additive(c, 0.0, n, fine, w).terminal() == ref.terminal());
}

TEST_CASE("Euler with the fine step count is the reference") {
  const TimeGrid fine = TimeGrid::uniform(1 << 14);
  const Path w = sample_brownian(fine, RngStream{3});
  const DriftSpec& mu = testsupport::mu075();
  CHECK(euler_additive(mu, 0.2, 1 << 14, fine, w).values == reference_solution(mu, 0.2, fine, w).values);
}

TEST_CASE("terminal-only solver matches the path solver") {
  const TimeGrid fine = TimeGrid::uniform(1 << 12);
  const Path w = sample_brownian(fine, RngStream{4});
  const DriftSpec& mu = testsupport::mu075();
  const auto t = euler_additive_terminal(mu, 0.0, 64, fine, w, 100.0);
  REQUIRE(t);
  CHECK(*t == euler_additive(mu, 0.0, 64, fine, w).terminal());
  CHECK_FALSE(euler_additive_terminal(mu, 0.0, 64, fine, w, 1e-3));
}

TEST_CASE("reference needs a fine uniform grid") {
  const TimeGrid fine = TimeGrid::uniform(1024);
  const Path w(fine.size(), 0.0);
  CHECK_THROWS(reference_solution(make_drift(drift_kind::Zero{}), 0.0, fine, w));
}

TEST_CASE("multiplicative scheme under the zero drift transform") {
  const TimeGrid fine = TimeGrid::uniform(256);
  const Path w = sample_brownian(fine, RngStream{5});
  const TransformTable t = build_transform(make_drift(drift_kind::Zero{}), 10.0);
  const SdePath y = euler_multiplicative(t, 0.0, fine, w);
  CHECK(y.terminal() == doctest::Approx(w.back()).epsilon(1e-12));
  CHECK(*euler_multiplicative_terminal(t, 0.0, w) == y.terminal());
  const TransformTable tiny = build_transform(make_drift(drift_kind::Zero{}), 1e-2, 1e-5);
  Path big(fine.size());
  for (std::size_t k = 0; k < big.size(); ++k) big[k] = 0.1 * k;
  CHECK_THROWS_AS(euler_multiplicative(tiny, 0.0, fine, big), RangeError);
}
