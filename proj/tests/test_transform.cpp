#include <doctest.h>

#include <cmath>

#include "strongrate/error.hpp"
#include "strongrate/transform.hpp"
#include "support.hpp"

using namespace strongrate;

TEST_CASE("indicator drift closed form") {
  const DriftSpec ind = make_drift(drift_kind::Indicator01{});
  const TransformTable t = build_transform(ind, 4.0);
  CHECK(std::abs(eval_G(t, 1.0) - (1.0 - std::exp(-2.0)) / 2.0) <= 1e-6);
  CHECK(std::abs(eval_G(t, 0.5) - (1.0 - std::exp(-1.0)) / 2.0) <= 1e-6);
  CHECK(std::abs(eval_G(t, -1.5) + 1.5) <= 1e-12);
  CHECK(std::abs(eval_G(t, 3.0) - ((1.0 - std::exp(-2.0)) / 2.0 + 2.0 * std::exp(-2.0))) <= 1e-6);
  CHECK(eval_Gprime(t, -2.0) == doctest::Approx(1.0));
  CHECK(eval_Gprime(t, 2.0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-3));
}

TEST_CASE("G' bounds and round trips for mu_s") {
  const DriftSpec& mu = testsupport::mu075();
  const TransformTable t = build_transform(mu, 8.0);
  CHECK(t.c1 >= std::exp(-2.0 * t.l1_norm));
  CHECK(t.c2 <= std::exp(2.0 * t.l1_norm));
  for (int i = 0; i <= 200; ++i) {
    const double y = std::min(t.y_max(), t.y_min() + (t.y_max() - t.y_min()) * i / 200.0);
    REQUIRE(std::abs(eval_G(t, eval_Ginv(t, y)) - y) <= 1e-10);
    const double x = -8.0 + 16.0 * i / 200.0;
    REQUIRE(std::abs(eval_Ginv(t, eval_G(t, x)) - x) <= 1e-9);
  }
  CHECK(eval_b(t, eval_G(t, 0.3)) == doctest::Approx(eval_Gprime(t, 0.3)).epsilon(1e-9));
}

TEST_CASE("zero drift transform is the identity") {
  const TransformTable t = build_transform(make_drift(drift_kind::Zero{}), 2.0);
  CHECK(eval_G(t, 1.2345) == doctest::Approx(1.2345).epsilon(1e-12));
  CHECK(t.c1 == 1.0);
  CHECK(t.c2 == 1.0);
}

TEST_CASE("transform input checks") {
  CHECK_THROWS_AS(build_transform(make_drift(drift_kind::Constant{1.0}), 4.0), DomainError);
  const TransformTable t = build_transform(make_drift(drift_kind::Hat{}), 2.0);
  CHECK_THROWS_AS(eval_G(t, 2.5), RangeError);
  CHECK_THROWS_AS(eval_Ginv(t, t.y_max() + 1.0), RangeError);
  CHECK_THROWS(build_transform(make_drift(drift_kind::Hat{}), 2.0, 0.01));
}
