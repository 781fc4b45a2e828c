#include "strongrate/solver.hpp"

#include <cmath>
#include <sstream>

#include "strongrate/error.hpp"

namespace strongrate {

namespace {

constexpr std::size_t kMinReferenceSteps = std::size_t{1} << 14;

// Fine indices of the points i/n, i = 0..n.
std::vector<std::size_t> euler_nodes(int n, const TimeGrid& fine) {
  if (n < 1) throw GridError("number of Euler steps must be positive");
  if (fine.horizon() != 1.0) throw GridError("Euler schemes run on [0, 1]");
  std::vector<double> pts(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) pts[i] = static_cast<double>(i) / n;
  pts.back() = 1.0;
  return align(TimeGrid(std::move(pts)), fine);
}

}  // namespace

std::string scheme_label(const SdePath& p) {
  switch (p.scheme) {
    case Scheme::euler_coarse: return "euler_coarse(" + std::to_string(p.n) + ")";
    case Scheme::euler_fine: return "euler_fine";
    case Scheme::euler_maruyama_transformed: return "euler_maruyama_transformed";
  }
  return "unknown";
}

SdePath euler_additive(const DriftSpec& mu, double x0, int n, const TimeGrid& fine, std::span<const double> w) {
  if (w.size() != fine.size()) throw GridError("path length does not match its grid");
  const auto nodes = euler_nodes(n, fine);
  const auto t = fine.times();
  SdePath out{fine, Path(fine.size()), x0,
              n == static_cast<int>(fine.steps()) ? Scheme::euler_fine : Scheme::euler_coarse, n};
  double drift_disp = 0.0;
  out.values[0] = x0 + w[0] + drift_disp;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    const double frozen = mu(out.values[nodes[i]]);
    for (std::size_t k = nodes[i]; k < nodes[i + 1]; ++k) {
      drift_disp += frozen * (t[k + 1] - t[k]);
      out.values[k + 1] = x0 + w[k + 1] + drift_disp;
    }
  }
  return out;
}

SdePath reference_solution(const DriftSpec& mu, double x0, const TimeGrid& fine, std::span<const double> w) {
  if (!fine.is_uniform() || fine.steps() < kMinReferenceSteps) {
    throw GridError("reference solution needs a uniform grid with at least 2^14 steps");
  }
  return euler_additive(mu, x0, static_cast<int>(fine.steps()), fine, w);
}

std::optional<double> euler_additive_terminal(const DriftSpec& mu, double x0, std::size_t stride,
                                              const TimeGrid& fine, std::span<const double> w,
                                              double bound) {
  const auto t = fine.times();
  const std::size_t steps = fine.steps();
  double drift_disp = 0.0;
  double x = x0 + w[0];
  for (std::size_t a = 0; a < steps; a += stride) {
    if (!(std::abs(x) <= bound)) return std::nullopt;
    const double frozen = mu(x);
    const std::size_t b = a + stride;
    // Same operation sequence as euler_additive, one add per fine step.
    for (std::size_t k = a; k < b; ++k) drift_disp += frozen * (t[k + 1] - t[k]);
    x = x0 + w[b] + drift_disp;
  }
  if (!std::isfinite(x)) return std::nullopt;
  return x;
}

SdePath euler_multiplicative(const TransformTable& table, double y0, const TimeGrid& fine,
                             std::span<const double> w) {
  if (w.size() != fine.size()) throw GridError("path length does not match its grid");
  if (!table.in_range(y0)) throw RangeError("initial value outside the range of G");
  SdePath out{fine, Path(fine.size()), y0, Scheme::euler_maruyama_transformed, static_cast<int>(fine.steps())};
  out.values[0] = y0;
  for (std::size_t k = 0; k + 1 < w.size(); ++k) {
    const double y = out.values[k];
    out.values[k + 1] = y + eval_b(table, y) * (w[k + 1] - w[k]);
    if (!table.in_range(out.values[k + 1])) {
      std::ostringstream os;
      os << "transformed path left the table range at t = " << fine[k + 1];
      throw RangeError(os.str());
    }
  }
  return out;
}

std::optional<double> euler_multiplicative_terminal(const TransformTable& table, double y0,
                                                    std::span<const double> w) {
  double y = y0;
  for (std::size_t k = 0; k + 1 < w.size(); ++k) {
    if (!table.in_range(y)) return std::nullopt;
    y += eval_b(table, y) * (w[k + 1] - w[k]);
  }
  if (!table.in_range(y)) return std::nullopt;
  return y;
}

}  // namespace strongrate
