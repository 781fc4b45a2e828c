#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "strongrate/error.hpp"
#include "strongrate/noise.hpp"
#include "strongrate/rng.hpp"

using namespace strongrate;

TEST_CASE("tilde grid shape") {
  for (int n : {1, 3, 8, 64}) {
    const TimeGrid g = make_tilde_grid(n);
    CHECK(g.size() == static_cast<std::size_t>(5 * n) + 1);  // 5n points plus the origin
    CHECK(g[0] == 0.0);
    CHECK(g.horizon() == 1.0);
    for (int j = 0; j <= 4 * n; ++j) {
      const double t = j / (4.0 * n);
      CHECK(std::binary_search(g.times().begin(), g.times().end(), t));
    }
    // At least n intervals of length 1/(4n) inside [1/2, 1].
    int full = 0;
    for (std::size_t i = 1; i < g.size(); ++i) {
      if (g[i - 1] >= 0.5 && std::abs(g[i] - g[i - 1] - 1.0 / (4 * n)) < 1e-15) ++full;
    }
    CHECK(full >= n);
  }
  const std::vector<double> extra{0.3};
  CHECK(make_tilde_grid(4, extra).size() == 21);
}

TEST_CASE("alignment") {
  const TimeGrid fine = TimeGrid::uniform(64);
  const auto idx = align(make_tilde_grid(4), fine);
  CHECK(idx.front() == 0);
  CHECK(idx.back() == 64);
  CHECK_THROWS_AS(align(TimeGrid::observation({0.3, 1.0}), fine), GridError);
  CHECK_THROWS(TimeGrid::observation({0.5, 0.9}));
}

TEST_CASE("bridges are pinned") {
  NormalSampler n(RngStream{3});
  const Path b = sample_bridge(0.25, 16, n);
  CHECK(b.front() == 0.0);
  CHECK(b.back() == 0.0);
  CHECK(b.size() == 17);
}

TEST_CASE("coupled pair agrees bitwise at observation points") {
  const TimeGrid fine = TimeGrid::uniform(256);
  const TimeGrid pi = make_tilde_grid(8);
  const auto idx = align(pi, fine);
  for (std::uint64_t rep = 0; rep < 50; ++rep) {
    const CoupledPathPair pair = sample_coupled(pi, fine, RngStream{11, rep});
    bool differs = false;
    for (const auto k : idx) REQUIRE(pair.w[k] == pair.w_tilde[k]);
    for (std::size_t k = 0; k < fine.size(); ++k) differs = differs || pair.w[k] != pair.w_tilde[k];
    CHECK(differs);
  }
}

TEST_CASE("observation grid equal to the fine grid gives identical paths") {
  const TimeGrid fine = TimeGrid::uniform(128);
  const CoupledPathPair pair = sample_coupled(fine, fine, RngStream{2});
  CHECK(pair.w == pair.w_tilde);
}

TEST_CASE("interpolation reproduces w at the points of pi") {
  const TimeGrid fine = TimeGrid::uniform(64);
  const TimeGrid pi = TimeGrid::observation({0.25, 0.5, 1.0});
  const Path w = sample_brownian(fine, RngStream{9});
  const Path lin = interpolate_on(pi, fine, w);
  CHECK(lin[16] == w[16]);
  CHECK(lin[64] == w[64]);
  CHECK(lin[40] == doctest::Approx(w[32] + 0.25 * (w[64] - w[32])).epsilon(1e-12));
}
