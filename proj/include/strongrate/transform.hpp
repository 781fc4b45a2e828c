#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "strongrate/drift.hpp"

namespace strongrate {

// Tabulated drift-removing space change G(x) = int_0^x exp(-2 T(y)) dy with
// T(y) = int_0^y mu, on the uniform grid k * step, |k| <= K. Y = G(X) solves
// dY = b(Y) dW with b = G' o G^{-1}.
struct TransformTable {
  double step = 0.0;
  std::size_t origin = 0;  // index of x = 0
  std::vector<double> x_grid;
  std::vector<double> T_vals;
  std::vector<double> G_vals;
  std::vector<double> Gp_vals;
  double c1 = 0.0;  // min G'
  double c2 = 0.0;  // max G'
  double l1_norm = 0.0;  // of the drift it was built from

  double x_max() const { return x_grid.back(); }
  double y_min() const { return G_vals.front(); }
  double y_max() const { return G_vals.back(); }
  bool in_range(double y) const { return y >= y_min() && y <= y_max(); }

  // x, T, G, G' columns.
  void dump_csv(const std::string& path) const;
};

// Cumulative midpoint rule for T, trapezoid for G. Rejects drifts without a finite L1 norm
// and steps coarser than 1e-3 * x_max.
TransformTable build_transform(const DriftSpec& mu, double x_max, double step = 1e-4);

double eval_G(const TransformTable& table, double x);
double eval_Gprime(const TransformTable& table, double x);
double eval_Ginv(const TransformTable& table, double y);
double eval_b(const TransformTable& table, double y);

}  // namespace strongrate
