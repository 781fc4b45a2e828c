#include "strongrate/noise.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "strongrate/error.hpp"

namespace strongrate {

TimeGrid::TimeGrid(std::vector<double> times) {
  if (times.size() < 2) throw GridError("a time grid needs at least two points");
  if (times.front() != 0.0) throw GridError("time grids start at 0");
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) throw GridError("time grid points must be strictly increasing");
  }
  times_ = std::make_shared<const std::vector<double>>(std::move(times));
}

TimeGrid TimeGrid::uniform(std::size_t steps, double horizon) {
  if (steps == 0) throw GridError("uniform grid needs at least one step");
  if (!(horizon > 0.0)) throw GridError("grid horizon must be positive");
  std::vector<double> t(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) t[k] = horizon * static_cast<double>(k) / static_cast<double>(steps);
  t.back() = horizon;
  TimeGrid g(std::move(t));
  g.uniform_ = true;
  return g;
}

TimeGrid TimeGrid::observation(std::vector<double> points) {
  if (!points.empty() && points.front() != 0.0) points.insert(points.begin(), 0.0);
  TimeGrid g(std::move(points));
  if (g.horizon() != 1.0) throw GridError("observation grids end at t = 1");
  return g;
}

std::vector<std::size_t> align(const TimeGrid& coarse, const TimeGrid& fine) {
  std::vector<std::size_t> idx(coarse.size());
  const auto ft = fine.times();
  std::size_t j = 0;
  for (std::size_t i = 0; i < coarse.size(); ++i) {
    const double t = coarse[i];
    const double tol = 1e-12 * std::max(1.0, std::abs(t));
    while (j < ft.size() && ft[j] < t - tol) ++j;
    if (j == ft.size() || std::abs(ft[j] - t) > tol) {
      std::ostringstream os;
      os << "coarse grid point " << t << " is not a point of the fine grid";
      throw GridError(os.str());
    }
    idx[i] = j;
  }
  return idx;
}

TimeGrid make_tilde_grid(int n, std::span<const double> extra) {
  if (n < 1) throw GridError("grid size n must be positive");
  if (extra.size() > static_cast<std::size_t>(n)) throw GridError("at most n extra points allowed");
  const double cell = 1.0 / (4.0 * n);
  std::set<double> pts;
  for (int j = 1; j <= 4 * n; ++j) pts.insert(j / (4.0 * n));
  std::vector<bool> touched(4 * n, false);
  for (const double e : extra) {
    if (!(e > 0.0 && e < 1.0)) throw GridError("extra grid points must lie in (0, 1)");
    const double pos = e / cell;
    if (std::abs(pos - std::round(pos)) < 1e-9) throw GridError("extra point coincides with a j/(4n) point");
    if (!pts.insert(e).second) throw GridError("duplicate extra grid point");
    touched[static_cast<std::size_t>(std::floor(pos))] = true;
  }
  for (int j = 0; j < 4 * n && pts.size() < static_cast<std::size_t>(5 * n); ++j) {
    if (!touched[j]) pts.insert((2.0 * j + 1.0) / (8.0 * n));
  }
  std::vector<double> t{0.0};
  t.insert(t.end(), pts.begin(), pts.end());
  return TimeGrid::observation(std::move(t));
}

Path sample_brownian(const TimeGrid& fine, NormalSampler& normal) {
  Path w(fine.size());
  w[0] = 0.0;
  if (fine.is_uniform()) {
    const double sd = std::sqrt(fine[1] - fine[0]);
    for (std::size_t k = 1; k < w.size(); ++k) w[k] = w[k - 1] + sd * normal();
  } else {
    for (std::size_t k = 1; k < w.size(); ++k) w[k] = w[k - 1] + std::sqrt(fine[k] - fine[k - 1]) * normal();
  }
  return w;
}

Path sample_brownian(const TimeGrid& fine, const RngStream& stream) {
  NormalSampler normal(stream);
  return sample_brownian(fine, normal);
}

Path interpolate_on(const TimeGrid& pi, const TimeGrid& fine, std::span<const double> w) {
  if (w.size() != fine.size()) throw GridError("path length does not match its grid");
  const auto idx = align(pi, fine);
  if (idx.back() != fine.size() - 1) throw GridError("observation grid must end at the fine grid's end");
  Path bar(w.size());
  for (std::size_t i = 0; i + 1 < idx.size(); ++i) {
    const std::size_t a = idx[i], b = idx[i + 1];
    const double ta = fine[a], tb = fine[b];
    bar[a] = w[a];
    for (std::size_t k = a + 1; k < b; ++k) {
      const double lam = (fine[k] - ta) / (tb - ta);
      bar[k] = w[a] + lam * (w[b] - w[a]);
    }
  }
  bar[idx.back()] = w[idx.back()];
  return bar;
}

Path sample_bridge_on(std::span<const double> u, NormalSampler& normal) {
  if (u.size() < 2 || u.front() != 0.0) throw GridError("bridge offsets must start at 0");
  const double len = u.back();
  Path b(u.size(), 0.0);
  for (std::size_t k = 1; k + 1 < u.size(); ++k) {
    const double rest = len - u[k - 1];
    const double next_rest = len - u[k];
    const double mean = next_rest / rest * b[k - 1];
    const double var = (u[k] - u[k - 1]) * next_rest / rest;
    b[k] = mean + std::sqrt(var) * normal();
  }
  b.back() = 0.0;
  return b;
}

Path sample_bridge(double length, std::size_t steps, NormalSampler& normal) {
  if (steps < 1) throw GridError("bridge needs at least one step");
  if (!(length > 0.0)) throw GridError("bridge length must be positive");
  std::vector<double> u(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) u[k] = length * static_cast<double>(k) / static_cast<double>(steps);
  return sample_bridge_on(u, normal);
}

void couple_into(const TimeGrid& fine, std::span<const std::size_t> pi_index, std::span<const double> w,
                 NormalSampler& normal, std::span<double> wt) {
  const auto t = fine.times();
  for (std::size_t i = 0; i + 1 < pi_index.size(); ++i) {
    const std::size_t a = pi_index[i], b = pi_index[i + 1];
    const double ta = t[a], len = t[b] - ta;
    const double slope = (w[b] - w[a]) / len;
    wt[a] = w[a];
    double bridge = 0.0;
    for (std::size_t k = a + 1; k < b; ++k) {
      // Forward recursion of the bridge pinned to 0 at t[b].
      const double rest = t[b] - t[k - 1];
      const double next_rest = t[b] - t[k];
      bridge = next_rest / rest * bridge + std::sqrt((t[k] - t[k - 1]) * next_rest / rest) * normal();
      wt[k] = w[a] + slope * (t[k] - ta) + bridge;
    }
  }
  wt[pi_index.back()] = w[pi_index.back()];
}

CoupledPathPair sample_coupled(const TimeGrid& pi, const TimeGrid& fine, const RngStream& stream) {
  const auto idx = align(pi, fine);
  if (idx.back() != fine.size() - 1) throw GridError("observation grid must end at the fine grid's end");
  CoupledPathPair pair{fine, pi, sample_brownian(fine, stream.with_substream(0)), {}};
  pair.w_tilde.assign(fine.size(), 0.0);
  NormalSampler bridge_normal(stream.with_substream(1));
  couple_into(fine, idx, pair.w, bridge_normal, pair.w_tilde);
  return pair;
}

void dump_paths_csv(const CoupledPathPair& pair, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << "t,w,w_tilde\n";
  char buf[96];
  for (std::size_t k = 0; k < pair.w.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", pair.fine[k], pair.w[k], pair.w_tilde[k]);
    out << buf;
  }
  if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace strongrate
