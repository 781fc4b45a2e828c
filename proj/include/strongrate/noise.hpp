#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "strongrate/rng.hpp"

namespace strongrate {

// Strictly increasing times starting at 0. Copies share storage.
class TimeGrid {
 public:
  explicit TimeGrid(std::vector<double> times);

  static TimeGrid uniform(std::size_t steps, double horizon = 1.0);

  // A coarse observation grid {0, t_1, ..., t_n}: additionally requires t_n = 1.
  static TimeGrid observation(std::vector<double> points);

  std::span<const double> times() const { return *times_; }
  double operator[](std::size_t i) const { return (*times_)[i]; }
  std::size_t size() const { return times_->size(); }
  std::size_t steps() const { return times_->size() - 1; }
  double horizon() const { return times_->back(); }
  bool is_uniform() const { return uniform_; }

 private:
  std::shared_ptr<const std::vector<double>> times_;
  bool uniform_ = false;
};

using Path = std::vector<double>;

// Index in `fine` of every point of `coarse`. Throws GridError when a point
// of `coarse` is not a point of `fine` (relative tolerance 1e-12).
std::vector<std::size_t> align(const TimeGrid& coarse, const TimeGrid& fine);

// Member of the class of grids with 5n points containing all j/(4n): the
// points j/(4n), the extra points, and midpoints of the leftmost untouched
// cells of width 1/(4n) until 5n points are reached.
TimeGrid make_tilde_grid(int n, std::span<const double> extra = {});

// Brownian path on `fine`, starting at 0.
Path sample_brownian(const TimeGrid& fine, NormalSampler& normal);
Path sample_brownian(const TimeGrid& fine, const RngStream& stream);

// Piecewise linear interpolation of w at the points of pi, evaluated on the
// fine grid carrying w.
Path interpolate_on(const TimeGrid& pi, const TimeGrid& fine, std::span<const double> w);

// Brownian bridge from 0 to 0 on `steps` equal substeps of [0, length].
Path sample_bridge(double length, std::size_t steps, NormalSampler& normal);

// Bridge on arbitrary offsets 0 = u_0 < ... < u_m = length.
Path sample_bridge_on(std::span<const double> offsets, NormalSampler& normal);

struct CoupledPathPair {
  TimeGrid fine;
  TimeGrid pi;
  Path w;
  Path w_tilde;
};

// w is a Brownian path on `fine` (substream 0 of `stream`); w_tilde equals the
// interpolation of w at pi plus independent bridges (substream 1). w_tilde is
// copied from w at the points of pi.
CoupledPathPair sample_coupled(const TimeGrid& pi, const TimeGrid& fine, const RngStream& stream);

// Hot-loop form: overwrites w_tilde given w, the aligned indices of pi in
// the fine grid and a sampler for the bridges.
void couple_into(const TimeGrid& fine, std::span<const std::size_t> pi_index,
                 std::span<const double> w, NormalSampler& bridge_normal, std::span<double> w_tilde);

// Columns t, w, w_tilde.
void dump_paths_csv(const CoupledPathPair& pair, const std::string& path);

}  // namespace strongrate
