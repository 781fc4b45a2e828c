#include "strongrate/transform.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "strongrate/error.hpp"

namespace strongrate {

TransformTable build_transform(const DriftSpec& mu, double x_max, double step) {
  if (!mu.integrable()) {
    throw DomainError("transform requires an integrable drift; '" + mu.label + "' has infinite L1 norm");
  }
  if (!(x_max > 0.0) || !(step > 0.0)) throw ConfigError("transform x_max and step must be positive");
  if (step > 1e-3 * x_max) throw ConfigError("transform step must be <= 1e-3 * x_max");

  const auto K = static_cast<std::size_t>(std::ceil(x_max / step - 1e-9));
  const std::size_t n = 2 * K + 1;
  TransformTable t;
  t.step = step;
  t.origin = K;
  t.l1_norm = *mu.l1_norm;
  t.x_grid.resize(n);
  t.T_vals.assign(n, 0.0);
  t.G_vals.assign(n, 0.0);
  t.Gp_vals.assign(n, 1.0);

  for (std::size_t i = 0; i < n; ++i) t.x_grid[i] = (static_cast<double>(i) - static_cast<double>(K)) * step;
  // Midpoint rule for T: exact for piecewise linear drifts whose jumps and
  // kinks sit on grid nodes.
  std::vector<double> mid(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) mid[i] = mu(t.x_grid[i] + 0.5 * step);
  for (std::size_t i = K + 1; i < n; ++i) t.T_vals[i] = t.T_vals[i - 1] + step * mid[i - 1];
  for (std::size_t i = K; i-- > 0;) t.T_vals[i] = t.T_vals[i + 1] - step * mid[i];
  for (std::size_t i = 0; i < n; ++i) t.Gp_vals[i] = std::exp(-2.0 * t.T_vals[i]);
  for (std::size_t i = K + 1; i < n; ++i) t.G_vals[i] = t.G_vals[i - 1] + 0.5 * step * (t.Gp_vals[i] + t.Gp_vals[i - 1]);
  for (std::size_t i = K; i-- > 0;) t.G_vals[i] = t.G_vals[i + 1] - 0.5 * step * (t.Gp_vals[i] + t.Gp_vals[i + 1]);

  const auto [lo, hi] = std::minmax_element(t.Gp_vals.begin(), t.Gp_vals.end());
  t.c1 = *lo;
  t.c2 = *hi;
  return t;
}

namespace {

// Index i with x_grid[i] <= x <= x_grid[i + 1].
std::size_t cell_of(const TransformTable& t, double x) {
  if (!(std::abs(x) <= t.x_max())) {
    std::ostringstream os;
    os << "x = " << x << " outside transform table [-" << t.x_max() << ", " << t.x_max() << "]";
    throw RangeError(os.str());
  }
  const double pos = x / t.step + static_cast<double>(t.origin);
  auto i = static_cast<std::size_t>(std::max(0.0, std::floor(pos)));
  return std::min(i, t.x_grid.size() - 2);
}

double interp(const TransformTable& t, const std::vector<double>& v, double x) {
  const std::size_t i = cell_of(t, x);
  const double u = (x - t.x_grid[i]) / t.step;
  return v[i] + u * (v[i + 1] - v[i]);
}

}  // namespace

double eval_G(const TransformTable& t, double x) { return interp(t, t.G_vals, x); }

double eval_Gprime(const TransformTable& t, double x) { return interp(t, t.Gp_vals, x); }

double eval_Ginv(const TransformTable& t, double y) {
  if (!t.in_range(y)) {
    std::ostringstream os;
    os << "y = " << y << " outside the range of G [" << t.y_min() << ", " << t.y_max() << "]";
    throw RangeError(os.str());
  }
  // Bisection over the monotone table, then invert the linear piece.
  auto it = std::upper_bound(t.G_vals.begin(), t.G_vals.end(), y);
  std::size_t i = it == t.G_vals.begin() ? 0 : static_cast<std::size_t>(it - t.G_vals.begin()) - 1;
  i = std::min(i, t.G_vals.size() - 2);
  const double g0 = t.G_vals[i], g1 = t.G_vals[i + 1];
  const double u = std::clamp((y - g0) / (g1 - g0), 0.0, 1.0);
  return t.x_grid[i] + u * t.step;
}

double eval_b(const TransformTable& t, double y) { return eval_Gprime(t, eval_Ginv(t, y)); }

void TransformTable::dump_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << "x,T,G,Gprime\n";
  char buf[128];
  for (std::size_t i = 0; i < x_grid.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", x_grid[i], T_vals[i], G_vals[i], Gp_vals[i]);
    out << buf;
  }
  if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace strongrate
