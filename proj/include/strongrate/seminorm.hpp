#pragma once

#include <functional>
#include <span>
#include <vector>

#include "strongrate/drift.hpp"

namespace strongrate {

// int_{-cutoff}^{cutoff} |x|^(2s) |f_hat(x)|^2 dx, i.e. the Fourier side of
// the W^{s,2} seminorm without its s-dependent normalising constant.
// Accumulated over unit subintervals, so it is nondecreasing in cutoff.
double seminorm_fourier_side(double s, const std::function<double(double)>& f_hat, double cutoff);

// Same integral evaluated at every cutoff of an increasing list in one pass.
std::vector<double> seminorm_fourier_profile(double s, const std::function<double(double)>& f_hat,
                                             std::span<const double> cutoffs);

struct DirectSeminorm {
  int mesh = 0;
  double estimate = 0.0;    // off-diagonal double Riemann sum
  double band_bound = 0.0;  // Lipschitz-type bound on the excluded diagonal band
};

// Double Riemann sum of |f(x) - f(y)|^p / |x - y|^(1 + s p) over
// [-L, L]^2 on a mesh x mesh midpoint grid, excluding the diagonal cells.
DirectSeminorm seminorm_direct(const DriftSpec& f, double s, double p, double domain_half_width,
                               int mesh);

struct SeminormStudy {
  std::vector<DirectSeminorm> levels;
  bool divergent = false;
};

// Runs seminorm_direct on mesh, 2 mesh, 4 mesh, ... and flags divergence when
// the increment between consecutive levels grows by more than
// growth_threshold for two consecutive doublings.
SeminormStudy seminorm_refinement_study(const DriftSpec& f, double s, double p,
                                        double domain_half_width, int mesh, int doublings,
                                        double growth_threshold = 1.0);

}  // namespace strongrate
