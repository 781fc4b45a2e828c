#include <doctest.h>

#include <cmath>
#include <vector>

#include "strongrate/seminorm.hpp"

using namespace strongrate;

TEST_CASE("Fourier side of the zero function") {
  CHECK(seminorm_fourier_side(0.75, [](double) { return 0.0; }, 50.0) == 0.0);
}

TEST_CASE("Fourier side of a Gaussian is Gamma(s + 1/2)") {
  const double v = seminorm_fourier_side(0.75, [](double x) { return std::exp(-0.5 * x * x); }, 40.0);
  CHECK(v == doctest::Approx(0.906402477055477078).epsilon(1e-9));  // Gamma(1.25)
}

TEST_CASE("Fourier side of h_0.75 is monotone and bounded by 2") {
  const std::vector<double> cutoffs{1, 10, 100, 101, 200, 1000, 10000};
  const auto v = seminorm_fourier_profile(0.75, [](double x) { return eval_h(0.75, x); }, cutoffs);
  for (std::size_t i = 1; i < v.size(); ++i) CHECK(v[i] >= v[i - 1]);
  CHECK(v.back() <= 2.0);
  // Increment per unit length past 100.
  CHECK(v[3] - v[2] < 1e-3);
  CHECK((v[4] - v[2]) / 100.0 < 1e-3);
  // Limit over the whole line (mpmath) minus the two-sided tail bound 2 / ln(e + C).
  CHECK(v.back() <= 1.01509991165958911);
  CHECK(v.back() >= 1.01509991165958911 - 2.0 / std::log(std::exp(1.0) + 10000.0));
}

TEST_CASE("profile agrees with single evaluations") {
  auto f = [](double x) { return 1.0 / (1.0 + x * x); };
  const std::vector<double> cutoffs{0.5, 3.0, 7.25};
  const auto v = seminorm_fourier_profile(0.6, f, cutoffs);
  for (std::size_t i = 0; i < cutoffs.size(); ++i) {
    CHECK(v[i] == doctest::Approx(seminorm_fourier_side(0.6, f, cutoffs[i])).epsilon(1e-12));
  }
}

TEST_CASE("direct seminorm of zero vanishes") {
  const DriftSpec zero = make_drift(drift_kind::Zero{});
  const DirectSeminorm d = seminorm_direct(zero, 0.4, 2.0, 4.0, 64);
  CHECK(d.estimate == 0.0);
  CHECK(d.band_bound == 0.0);
}

TEST_CASE("indicator: stable below 1/2, divergent above") {
  const DriftSpec ind = make_drift(drift_kind::Indicator01{});
  const SeminormStudy low = seminorm_refinement_study(ind, 0.4, 2.0, 4.0, 64, 4);
  CHECK_FALSE(low.divergent);
  for (std::size_t i = 1; i < low.levels.size(); ++i) CHECK(low.levels[i].estimate >= low.levels[i - 1].estimate);
  const SeminormStudy high = seminorm_refinement_study(ind, 0.6, 2.0, 4.0, 64, 4);
  CHECK(high.divergent);
}

TEST_CASE("direct seminorm rejects coarse meshes") {
  const DriftSpec hat = make_drift(drift_kind::Hat{});
  CHECK_THROWS(seminorm_direct(hat, 0.4, 2.0, 4.0, 8));
}
