#pragma once

#include <span>

namespace strongrate {

// One point of a convergence study: a resolution parameter (n, or a time
// increment), the estimated error and its standard error.
struct RateEntry {
  double n = 0.0;
  double error = 0.0;
  double std_error = 0.0;
};

struct RateFit {
  double slope = 0.0;
  double slope_stderr = 0.0;
  double intercept = 0.0;
};

// Weighted least squares of ln(error) on ln(n) with weights
// (error / std_error)^2. Entries with zero std_error get unit relative
// weight. The slope standard error is the weighted-LS one, inflated by
// sqrt(chi^2 / dof) when the scatter exceeds the stated errors.
RateFit fit_rate(std::span<const RateEntry> entries);

}  // namespace strongrate
