#include <doctest.h>

#include <cmath>
#include <vector>

#include "strongrate/error.hpp"
#include "strongrate/rate_fit.hpp"

using namespace strongrate;

namespace {
std::vector<RateEntry> power_law(double c, double rate, double rel_se) {
  std::vector<RateEntry> v;
  for (int n = 16; n <= 1024; n *= 2) {
    const double e = c * std::pow(n, rate);
    v.push_back({double(n), e, rel_se * e});
  }
  return v;
}
}  // namespace

TEST_CASE("exact power laws") {
  const RateFit a = fit_rate(power_law(1.0, -0.875, 0.01));
  CHECK(a.slope == doctest::Approx(-0.875).epsilon(1e-12));
  CHECK(a.intercept == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  const RateFit b = fit_rate(power_law(3.0, -1.0, 0.02));
  CHECK(b.slope == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(b.intercept == doctest::Approx(std::log(3.0)).epsilon(1e-12));
}

TEST_CASE("one perturbed point stays within the reported stderr") {
  const auto clean = power_law(2.0, -0.875, 0.05);
  const RateFit ref = fit_rate(clean);
  auto bumped = clean;
  bumped[3].error *= 1.1;
  const RateFit f = fit_rate(bumped);
  CHECK(std::abs(f.slope - ref.slope) <= f.slope_stderr);
}

TEST_CASE("invalid inputs") {
  auto v = power_law(1.0, -1.0, 0.01);
  v[2].error = 0.0;
  CHECK_THROWS_AS(fit_rate(v), DomainError);
  auto short_list = power_law(1.0, -1.0, 0.01);
  short_list.resize(2);
  CHECK_THROWS(fit_rate(short_list));
}
