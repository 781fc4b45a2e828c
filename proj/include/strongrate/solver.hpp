#pragma once

#include <optional>
#include <span>
#include <string>

#include "strongrate/drift.hpp"
#include "strongrate/noise.hpp"
#include "strongrate/transform.hpp"

namespace strongrate {

enum class Scheme { euler_coarse, euler_fine, euler_maruyama_transformed };

struct SdePath {
  TimeGrid fine;
  Path values;
  double x0 = 0.0;
  Scheme scheme = Scheme::euler_fine;
  int n = 0;  // number of Euler steps on [0, 1]

  double terminal() const { return values.back(); }
};

std::string scheme_label(const SdePath& path);

// Continuous-time Euler scheme with n steps on [0, 1] for dX = mu(X) dt + dW:
// the drift is frozen at the last point i/n, the noise is taken from w at
// every fine point. Values are stored as x0 + w_t + D_t where D_t is the
// accumulated drift displacement, so zero and constant drifts are exact.
SdePath euler_additive(const DriftSpec& mu, double x0, int n, const TimeGrid& fine, std::span<const double> w);

// Fine-grid Euler scheme (n = number of fine steps) used as the reference
// solution. Requires at least 2^14 uniform steps.
SdePath reference_solution(const DriftSpec& mu, double x0, const TimeGrid& fine, std::span<const double> w);

// Euler-Maruyama for dY = b(Y) dW on the fine grid. Throws RangeError when
// the path leaves the range of the transform table.
SdePath euler_multiplicative(const TransformTable& table, double y0, const TimeGrid& fine,
                             std::span<const double> w);

// Terminal values only; return nothing when |X| exceeds `bound` at a grid
// point (the replication is aborted). `stride` is the number of fine steps
// per Euler step on a uniform fine grid.
std::optional<double> euler_additive_terminal(const DriftSpec& mu, double x0, std::size_t stride,
                                              const TimeGrid& fine, std::span<const double> w,
                                              double bound);
std::optional<double> euler_multiplicative_terminal(const TransformTable& table, double y0,
                                                    std::span<const double> w);

}  // namespace strongrate
