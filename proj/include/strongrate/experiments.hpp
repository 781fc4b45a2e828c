#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "strongrate/drift.hpp"
#include "strongrate/noise.hpp"
#include "strongrate/rate_fit.hpp"

namespace strongrate {

struct ExperimentConfig {
  DriftKind drift = drift_kind::MuS{};
  double x0 = 0.0;
  std::vector<int> n_list;
  int fine_steps = 1 << 14;
  int reps = 1000;
  std::uint64_t seed = 42;
  double p = 2.0;
  // Execution only; never part of a report.
  unsigned workers = 0;

  // fine_steps >= 16 max(n_list), every n divides fine_steps, reps >= 100.
  void validate() const;
};

struct RateSeries {
  std::vector<RateEntry> entries;
  std::optional<RateFit> fit;  // empty when exact or too few positive errors
  bool exact = false;          // every error is exactly zero
};

struct EulerRateResult {
  RateSeries series;
  std::size_t reps = 0;
  std::size_t aborted = 0;
};

// Replications whose path leaves |x| <= |x0| + 8 + sup|mu| are aborted.
double excursion_bound(const DriftSpec& mu, double x0);

// E[|X_1^ref - X^E_{n,1}|^p]^(1/p) for every n, reference and coarse schemes
// driven by the same fine path. Throws AbortThresholdError above 1% aborts.
EulerRateResult estimate_euler_rate(const ExperimentConfig& config);
EulerRateResult estimate_euler_rate(const ExperimentConfig& config, const DriftSpec& mu);

using GridBuilder = std::function<TimeGrid(int n)>;

struct CouplingResult {
  RateSeries series;               // distances E[|X_1 - X~_1|^2]^(1/2)
  std::vector<double> fooling_bound;  // exactly half of each distance
  std::vector<std::size_t> grid_points;
  std::size_t reps = 0;
  std::size_t aborted = 0;
};

// Observation grids default to make_tilde_grid(n) without extra points.
CouplingResult estimate_coupling_distance(const ExperimentConfig& config, const GridBuilder& grids = {});
CouplingResult estimate_coupling_distance(const ExperimentConfig& config, const DriftSpec& mu,
                                          const GridBuilder& grids = {});

struct KappaReport {
  double z = 1.0;
  double quadrature_value = 0.0;
  double mc_value = 0.0;
  double mc_stderr = 0.0;
  std::size_t reps = 0;
  std::size_t fine_steps = 0;
  double max_abs_kappa = 0.0;
  std::size_t bound_violations = 0;  // replications with |kappa| above 2 + slack
};

// 4 int_0^1 int_s^1 e^{-(t-s)/2} (1 - e^{-s(1-t)}) dt ds, the second moment
// of kappa(1) for the single-point observation grid.
double kappa_quadrature();

// Monte Carlo of E|kappa(z)|^2, kappa(z) = int_0^1 (e^{izW_t} - e^{izW~_t}) dt
// for the coupling at the grid {1}, time integral by the trapezoid rule.
KappaReport kappa_mc(double z, std::size_t reps, std::size_t fine_steps, std::uint64_t seed,
                     unsigned workers = 0);

struct OccupationEntry {
  double delta = 0.0;
  double second_moment = 0.0;
  double std_error = 0.0;
};

struct OccupationResult {
  std::vector<OccupationEntry> entries;
  std::optional<RateFit> fit;  // ln(moment) against ln(delta)
  std::size_t reps = 0;
  std::size_t aborted = 0;
};

// E[(int_0^delta 1{(X_u - xi)(x0 + W_u - xi) <= 0} du)^2] for each delta from
// one fine Euler path per replication with step 1 / steps_per_unit.
OccupationResult occupation_mismatch(const DriftSpec& mu, double x0, double xi,
                                     const std::vector<double>& deltas, std::size_t reps,
                                     std::size_t steps_per_unit, std::uint64_t seed,
                                     unsigned workers = 0);

struct TransformLevel {
  std::size_t fine_steps = 0;
  double mean_abs_diff = 0.0;  // mean |G(X_1) - Y_1|
  double std_error = 0.0;
};

struct TransformCheck {
  double x_max = 0.0;
  double step = 0.0;
  double c1 = 0.0, c2 = 0.0;
  double l1_norm = 0.0;
  // Trapezoid T can exceed ||mu||_1 by up to step sup|mu| at jumps.
  double l1_slack = 0.0;
  bool gprime_bounds_hold = false;  // e^{-2(l1+slack)} <= c1 <= c2 <= e^{2(l1+slack)}
  double roundtrip_max_error = 0.0;     // max |G(G^{-1}(y)) - y|
  double inverse_roundtrip_max_error = 0.0;  // max |G^{-1}(G(x)) - x|
  double b_lipschitz_estimate = 0.0;
  double b_lipschitz_bound = 0.0;       // 2 sup|mu|
  std::vector<TransformLevel> levels;
  std::size_t reps = 0;
  std::size_t aborted = 0;
};

// Transform table invariants plus |G(X_1) - Y_1| under fine-grid refinement,
// both routes driven by the same Brownian increments.
TransformCheck transform_check(const DriftSpec& mu, double x0, const std::vector<int>& fine_levels,
                               std::size_t reps, std::uint64_t seed, unsigned workers = 0);

struct DecayCheck {
  std::size_t probes = 0;
  std::size_t violations = 0;   // |mu(x)| > 4(3/2+s)/x^2 + 2 abs_tol
  double max_ratio = 0.0;       // max |mu(x)| / decay bound
  double max_even_gap = 0.0;    // max |mu(x) - mu(-x)|
};

// Direct-quadrature probes over |x| in [x_lo, x_hi].
DecayCheck check_mu_s_decay(const FractionalDriftParams& params, double x_lo, double x_hi,
                            std::size_t probes);

}  // namespace strongrate
