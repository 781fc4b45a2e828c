#include "strongrate/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "strongrate/error.hpp"
#include "strongrate/parallel.hpp"
#include "strongrate/solver.hpp"
#include "strongrate/transform.hpp"

namespace strongrate {

namespace {

constexpr double kMaxAbortFraction = 0.01;

struct MeanStd {
  double mean = 0.0;
  double std_error = 0.0;
};

// Sequential reduction over replication slots (stride apart), skipping
// aborted replications.
MeanStd reduce(const std::vector<double>& slots, std::size_t stride, std::size_t column,
               const std::vector<char>& aborted) {
  double sum = 0.0;
  std::size_t m = 0;
  const std::size_t reps = aborted.size();
  for (std::size_t r = 0; r < reps; ++r) {
    if (aborted[r]) continue;
    sum += slots[r * stride + column];
    ++m;
  }
  if (m == 0) return {};
  const double mean = sum / static_cast<double>(m);
  double ss = 0.0;
  for (std::size_t r = 0; r < reps; ++r) {
    if (aborted[r]) continue;
    const double d = slots[r * stride + column] - mean;
    ss += d * d;
  }
  const double var = m > 1 ? ss / static_cast<double>(m - 1) : 0.0;
  return {mean, std::sqrt(var / static_cast<double>(m))};
}

std::size_t count_aborted(const std::vector<char>& aborted) {
  return static_cast<std::size_t>(std::count(aborted.begin(), aborted.end(), char{1}));
}

void check_abort_fraction(std::size_t aborted, std::size_t reps, const char* what) {
  if (static_cast<double>(aborted) > kMaxAbortFraction * static_cast<double>(reps)) {
    std::ostringstream os;
    os << what << ": " << aborted << " of " << reps << " replications aborted (limit 1%)";
    throw AbortThresholdError(os.str());
  }
}

// Moment of order p -> L^p norm, with the delta-method standard error.
RateEntry lp_entry(double n, const MeanStd& moment, double p) {
  if (moment.mean <= 0.0) return {n, 0.0, 0.0};
  const double err = std::pow(moment.mean, 1.0 / p);
  return {n, err, moment.std_error * err / (p * moment.mean)};
}

void finish_series(RateSeries& series) {
  const bool all_zero = std::all_of(series.entries.begin(), series.entries.end(),
                                    [](const RateEntry& e) { return e.error == 0.0; });
  if (all_zero) {
    series.exact = true;
    return;
  }
  std::vector<RateEntry> positive;
  for (const auto& e : series.entries) {
    if (e.error > 0.0) positive.push_back(e);
  }
  if (positive.size() >= 3) series.fit = fit_rate(positive);
}

}  // namespace

void ExperimentConfig::validate() const {
  if (n_list.empty()) throw ConfigError("n_list must not be empty");
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    if (n_list[i] < 1) throw ConfigError("n_list entries must be positive");
    if (i > 0 && n_list[i] <= n_list[i - 1]) throw ConfigError("n_list must be strictly increasing");
  }
  if (fine_steps < 16 * n_list.back()) throw ConfigError("fine_steps must be >= 16 * max(n_list)");
  for (const int n : n_list) {
    if (fine_steps % n != 0) throw ConfigError("every n in n_list must divide fine_steps");
  }
  if (reps < 100) throw ConfigError("reps must be >= 100");
  if (!(p >= 1.0)) throw ConfigError("error exponent p must be >= 1");
  if (!std::isfinite(x0)) throw ConfigError("x0 must be finite");
}

double excursion_bound(const DriftSpec& mu, double x0) { return std::abs(x0) + 8.0 + mu.sup_norm; }

EulerRateResult estimate_euler_rate(const ExperimentConfig& config) {
  config.validate();
  return estimate_euler_rate(config, make_drift(config.drift));
}

EulerRateResult estimate_euler_rate(const ExperimentConfig& config, const DriftSpec& mu) {
  config.validate();
  const std::size_t N = static_cast<std::size_t>(config.fine_steps);
  const std::size_t reps = static_cast<std::size_t>(config.reps);
  const std::size_t cols = config.n_list.size();
  const TimeGrid fine = TimeGrid::uniform(N);
  const double bound = excursion_bound(mu, config.x0);

  std::vector<double> slots(reps * cols, 0.0);
  std::vector<char> aborted(reps, 0);
  parallel_for(reps, config.workers, [&](std::size_t r) {
    const Path w = sample_brownian(fine, RngStream{config.seed, r, 0});
    const auto ref = euler_additive_terminal(mu, config.x0, 1, fine, w, bound);
    if (!ref) {
      aborted[r] = 1;
      return;
    }
    for (std::size_t j = 0; j < cols; ++j) {
      const auto coarse = euler_additive_terminal(mu, config.x0, N / config.n_list[j], fine, w, bound);
      if (!coarse) {
        aborted[r] = 1;
        return;
      }
      slots[r * cols + j] = std::pow(std::abs(*ref - *coarse), config.p);
    }
  });

  EulerRateResult out;
  out.reps = reps;
  out.aborted = count_aborted(aborted);
  check_abort_fraction(out.aborted, reps, "euler rate");
  for (std::size_t j = 0; j < cols; ++j) {
    out.series.entries.push_back(lp_entry(config.n_list[j], reduce(slots, cols, j, aborted), config.p));
  }
  finish_series(out.series);
  return out;
}

CouplingResult estimate_coupling_distance(const ExperimentConfig& config, const GridBuilder& grids) {
  config.validate();
  return estimate_coupling_distance(config, make_drift(config.drift), grids);
}

CouplingResult estimate_coupling_distance(const ExperimentConfig& config, const DriftSpec& mu,
                                          const GridBuilder& grids) {
  config.validate();
  const std::size_t N = static_cast<std::size_t>(config.fine_steps);
  const std::size_t reps = static_cast<std::size_t>(config.reps);
  const std::size_t cols = config.n_list.size();
  const TimeGrid fine = TimeGrid::uniform(N);
  const double bound = excursion_bound(mu, config.x0);

  CouplingResult out;
  std::vector<std::vector<std::size_t>> pi_index;
  for (const int n : config.n_list) {
    const TimeGrid pi = grids ? grids(n) : make_tilde_grid(n);
    if (pi.horizon() != 1.0) throw GridError("observation grids must end at 1");
    pi_index.push_back(align(pi, fine));
    out.grid_points.push_back(pi.steps());
  }

  std::vector<double> slots(reps * cols, 0.0);
  std::vector<char> aborted(reps, 0);
  parallel_for(reps, config.workers, [&](std::size_t r) {
    const RngStream stream{config.seed, r, 0};
    const Path w = sample_brownian(fine, stream);
    const auto x1 = euler_additive_terminal(mu, config.x0, 1, fine, w, bound);
    if (!x1) {
      aborted[r] = 1;
      return;
    }
    Path wt(fine.size());
    for (std::size_t j = 0; j < cols; ++j) {
      NormalSampler bridges(stream.with_substream(static_cast<std::uint32_t>(1 + j)));
      couple_into(fine, pi_index[j], w, bridges, wt);
      const auto xt1 = euler_additive_terminal(mu, config.x0, 1, fine, wt, bound);
      if (!xt1) {
        aborted[r] = 1;
        return;
      }
      const double d = *x1 - *xt1;
      slots[r * cols + j] = d * d;
    }
  });

  out.reps = reps;
  out.aborted = count_aborted(aborted);
  check_abort_fraction(out.aborted, reps, "coupling distance");
  for (std::size_t j = 0; j < cols; ++j) {
    const RateEntry e = lp_entry(config.n_list[j], reduce(slots, cols, j, aborted), 2.0);
    out.series.entries.push_back(e);
    out.fooling_bound.push_back(0.5 * e.error);
  }
  finish_series(out.series);
  return out;
}

double kappa_quadrature() {
  using boost::math::quadrature::gauss_kronrod;
  auto inner = [](double s) {
    auto f = [s](double t) { return std::exp(-(t - s) / 2.0) * (1.0 - std::exp(-s * (1.0 - t))); };
    return gauss_kronrod<double, 31>::integrate(f, s, 1.0, 10, 1e-13);
  };
  return 4.0 * gauss_kronrod<double, 31>::integrate(inner, 0.0, 1.0, 10, 1e-13);
}

KappaReport kappa_mc(double z, std::size_t reps, std::size_t fine_steps, std::uint64_t seed,
                     unsigned workers) {
  if (reps < 100) throw ConfigError("kappa reps must be >= 100");
  if (fine_steps < 1024) throw ConfigError("kappa fine_steps must be >= 2^10");
  if (!std::isfinite(z)) throw ConfigError("kappa z must be finite");
  const TimeGrid fine = TimeGrid::uniform(fine_steps);
  const std::vector<std::size_t> pi_index{0, fine_steps};
  const double dt = 1.0 / static_cast<double>(fine_steps);

  // Columns: |kappa|^2, |kappa|, slack = 4 z mean(|w| + |w~|)/2 dt.
  constexpr std::size_t cols = 3;
  std::vector<double> slots(reps * cols, 0.0);
  parallel_for(reps, workers, [&](std::size_t r) {
    const RngStream stream{seed, r, 0};
    const Path w = sample_brownian(fine, stream);
    Path wt(fine.size());
    NormalSampler bridges(stream.with_substream(1));
    couple_into(fine, pi_index, w, bridges, wt);
    double re = 0.0, im = 0.0, modulus = 0.0;
    for (std::size_t k = 0; k <= fine_steps; ++k) {
      const double c = (k == 0 || k == fine_steps) ? 0.5 : 1.0;
      re += c * (std::cos(z * w[k]) - std::cos(z * wt[k]));
      im += c * (std::sin(z * w[k]) - std::sin(z * wt[k]));
      modulus += c * 0.5 * (std::abs(w[k]) + std::abs(wt[k]));
    }
    re *= dt;
    im *= dt;
    slots[r * cols] = re * re + im * im;
    slots[r * cols + 1] = std::sqrt(re * re + im * im);
    slots[r * cols + 2] = 4.0 * std::abs(z) * modulus * dt * dt;
  });

  KappaReport out;
  out.z = z;
  out.reps = reps;
  out.fine_steps = fine_steps;
  out.quadrature_value = kappa_quadrature();
  const std::vector<char> none(reps, 0);
  const MeanStd m = reduce(slots, cols, 0, none);
  out.mc_value = m.mean;
  out.mc_stderr = m.std_error;
  for (std::size_t r = 0; r < reps; ++r) {
    const double k = slots[r * cols + 1];
    out.max_abs_kappa = std::max(out.max_abs_kappa, k);
    if (k > 2.0 + slots[r * cols + 2]) ++out.bound_violations;
  }
  return out;
}

OccupationResult occupation_mismatch(const DriftSpec& mu, double x0, double xi,
                                     const std::vector<double>& deltas, std::size_t reps,
                                     std::size_t steps_per_unit, std::uint64_t seed, unsigned workers) {
  if (deltas.size() < 3) throw ConfigError("occupation needs at least 3 deltas");
  if (reps < 100) throw ConfigError("occupation reps must be >= 100");
  if (steps_per_unit < 16) throw ConfigError("occupation steps_per_unit must be >= 16");
  std::vector<std::size_t> marks;
  for (std::size_t j = 0; j < deltas.size(); ++j) {
    const double d = deltas[j];
    if (!(d > 0.0 && d <= 1.0)) throw ConfigError("deltas must lie in (0, 1]");
    if (j > 0 && !(d > deltas[j - 1])) throw ConfigError("deltas must be strictly increasing");
    const double k = d * static_cast<double>(steps_per_unit);
    if (std::abs(k - std::round(k)) > 1e-9 || std::round(k) < 1.0) {
      throw ConfigError("every delta must be a multiple of 1 / steps_per_unit");
    }
    marks.push_back(static_cast<std::size_t>(std::round(k)));
  }
  const std::size_t K = marks.back();
  const double dt = 1.0 / static_cast<double>(steps_per_unit);
  const double sd = std::sqrt(dt);
  const double bound = excursion_bound(mu, x0);
  const std::size_t cols = deltas.size();

  std::vector<double> slots(reps * cols, 0.0);
  std::vector<char> aborted(reps, 0);
  parallel_for(reps, workers, [&](std::size_t r) {
    NormalSampler normal(RngStream{seed, r, 0});
    double w = 0.0, drift_disp = 0.0, x = x0, occ = 0.0;
    std::size_t next_mark = 0;
    for (std::size_t k = 1; k <= K; ++k) {
      drift_disp += mu(x) * dt;
      w += sd * normal();
      x = x0 + w + drift_disp;
      if (!(std::abs(x) <= bound)) {
        aborted[r] = 1;
        return;
      }
      if ((x - xi) * (x0 + w - xi) <= 0.0) occ += dt;
      if (k == marks[next_mark]) {
        slots[r * cols + next_mark] = occ * occ;
        ++next_mark;
      }
    }
  });

  OccupationResult out;
  out.reps = reps;
  out.aborted = count_aborted(aborted);
  check_abort_fraction(out.aborted, reps, "occupation mismatch");
  std::vector<RateEntry> fit_entries;
  for (std::size_t j = 0; j < cols; ++j) {
    const MeanStd m = reduce(slots, cols, j, aborted);
    out.entries.push_back({deltas[j], m.mean, m.std_error});
    if (m.mean > 0.0) fit_entries.push_back({deltas[j], m.mean, m.std_error});
  }
  if (fit_entries.size() >= 3) out.fit = fit_rate(fit_entries);
  return out;
}

TransformCheck transform_check(const DriftSpec& mu, double x0, const std::vector<int>& fine_levels,
                               std::size_t reps, std::uint64_t seed, unsigned workers) {
  if (fine_levels.empty()) throw ConfigError("transform check needs at least one fine level");
  for (std::size_t i = 0; i < fine_levels.size(); ++i) {
    if (fine_levels[i] < 1 || (i > 0 && fine_levels[i] <= fine_levels[i - 1])) {
      throw ConfigError("fine levels must be positive and increasing");
    }
    if (fine_levels.back() % fine_levels[i] != 0) throw ConfigError("fine levels must divide the finest level");
  }
  if (reps < 100) throw ConfigError("transform check reps must be >= 100");

  TransformCheck out;
  out.x_max = std::abs(x0) + 8.0;
  out.step = 1e-4;
  const TransformTable table = build_transform(mu, out.x_max, out.step);
  out.c1 = table.c1;
  out.c2 = table.c2;
  out.l1_norm = table.l1_norm;
  out.l1_slack = out.step * mu.sup_norm;
  out.gprime_bounds_hold = out.c1 >= std::exp(-2.0 * (out.l1_norm + out.l1_slack)) &&
                           out.c2 <= std::exp(2.0 * (out.l1_norm + out.l1_slack));
  out.b_lipschitz_bound = 2.0 * mu.sup_norm;

  CounterEngine probe(RngStream{seed, 0, 0xFFFFFFFFu});
  for (int i = 0; i < 1000; ++i) {
    const double x = (2.0 * probe.uniform01() - 1.0) * table.x_max();
    out.inverse_roundtrip_max_error =
        std::max(out.inverse_roundtrip_max_error, std::abs(eval_Ginv(table, eval_G(table, x)) - x));
    const double y = table.y_min() + probe.uniform01() * (table.y_max() - table.y_min());
    out.roundtrip_max_error = std::max(out.roundtrip_max_error, std::abs(eval_G(table, eval_Ginv(table, y)) - y));
    const double y1 = table.y_min() + probe.uniform01() * (table.y_max() - table.y_min());
    const double y2 = table.y_min() + probe.uniform01() * (table.y_max() - table.y_min());
    if (y1 != y2) {
      out.b_lipschitz_estimate = std::max(
          out.b_lipschitz_estimate, std::abs(eval_b(table, y1) - eval_b(table, y2)) / std::abs(y1 - y2));
    }
  }

  const std::size_t finest = static_cast<std::size_t>(fine_levels.back());
  const TimeGrid fine = TimeGrid::uniform(finest);
  std::vector<TimeGrid> level_grids;
  for (const int n : fine_levels) level_grids.push_back(TimeGrid::uniform(static_cast<std::size_t>(n)));
  const double y0 = eval_G(table, x0);
  const double bound = table.x_max();
  const std::size_t cols = fine_levels.size();

  std::vector<double> slots(reps * cols, 0.0);
  std::vector<char> aborted(reps, 0);
  parallel_for(reps, workers, [&](std::size_t r) {
    const Path w = sample_brownian(fine, RngStream{seed, r, 0});
    for (std::size_t j = 0; j < cols; ++j) {
      const std::size_t n = static_cast<std::size_t>(fine_levels[j]);
      const std::size_t stride = finest / n;
      Path ws(n + 1);
      for (std::size_t k = 0; k <= n; ++k) ws[k] = w[k * stride];
      const auto x1 = euler_additive_terminal(mu, x0, 1, level_grids[j], ws, bound);
      const auto y1 = euler_multiplicative_terminal(table, y0, ws);
      if (!x1 || !y1) {
        aborted[r] = 1;
        return;
      }
      slots[r * cols + j] = std::abs(eval_G(table, *x1) - *y1);
    }
  });

  out.reps = reps;
  out.aborted = count_aborted(aborted);
  check_abort_fraction(out.aborted, reps, "transform check");
  for (std::size_t j = 0; j < cols; ++j) {
    const MeanStd m = reduce(slots, cols, j, aborted);
    out.levels.push_back({static_cast<std::size_t>(fine_levels[j]), m.mean, m.std_error});
  }
  return out;
}

DecayCheck check_mu_s_decay(const FractionalDriftParams& params, double x_lo, double x_hi,
                            std::size_t probes) {
  if (!(x_lo > 0.0 && x_hi > x_lo) || probes < 2) throw ConfigError("decay probe range must be 0 < lo < hi");
  DecayCheck out;
  out.probes = probes;
  const double slack = 2.0 * params.quad.abs_tol;
  for (std::size_t i = 0; i < probes; ++i) {
    const double x = x_lo + (x_hi - x_lo) * static_cast<double>(i) / static_cast<double>(probes - 1);
    const double v = eval_mu_s(params, x);
    const double bound = mu_s_decay_bound(params.s, x);
    if (std::abs(v) > bound + slack) ++out.violations;
    out.max_ratio = std::max(out.max_ratio, std::abs(v) / bound);
    out.max_even_gap = std::max(out.max_even_gap, std::abs(v - eval_mu_s(params, -x)));
  }
  return out;
}

}  // namespace strongrate
