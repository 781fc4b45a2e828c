#include "strongrate/rate_fit.hpp"

#include <algorithm>
#include <cmath>

#include "strongrate/error.hpp"

namespace strongrate {

RateFit fit_rate(std::span<const RateEntry> entries) {
  if (entries.size() < 3) throw ConfigError("rate fit needs at least 3 entries");
  double sw = 0.0, sx = 0.0, sy = 0.0;
  for (const auto& e : entries) {
    if (!(e.n > 0.0)) throw DomainError("rate fit needs positive resolution values");
    if (!(e.error > 0.0)) throw DomainError("rate fit needs positive errors (use the exact path for zero errors)");
    const double rel = e.std_error > 0.0 ? e.std_error / e.error : 1.0;
    const double w = 1.0 / (rel * rel);
    sw += w;
    sx += w * std::log(e.n);
    sy += w * std::log(e.error);
  }
  const double xbar = sx / sw, ybar = sy / sw;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& e : entries) {
    const double rel = e.std_error > 0.0 ? e.std_error / e.error : 1.0;
    const double w = 1.0 / (rel * rel);
    const double dx = std::log(e.n) - xbar;
    sxx += w * dx * dx;
    sxy += w * dx * (std::log(e.error) - ybar);
  }
  if (!(sxx > 0.0)) throw DomainError("rate fit needs at least two distinct resolution values");

  RateFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = ybar - fit.slope * xbar;

  double chi2 = 0.0;
  for (const auto& e : entries) {
    const double rel = e.std_error > 0.0 ? e.std_error / e.error : 1.0;
    const double r = std::log(e.error) - fit.intercept - fit.slope * std::log(e.n);
    chi2 += r * r / (rel * rel);
  }
  const double dof = static_cast<double>(entries.size()) - 2.0;
  const double inflate = std::max(1.0, std::sqrt(chi2 / dof));
  fit.slope_stderr = inflate / std::sqrt(sxx);
  return fit;
}

}  // namespace strongrate
