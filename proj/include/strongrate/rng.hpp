#pragma once

#include <array>
#include <cstdint>
#include <limits>

#include <boost/random/normal_distribution.hpp>

namespace strongrate {

// Identifies one independent random sequence. `stream_id` is the replication
// index; `substream` separates the independent sources used inside one
// replication (driving path, bridges for grid k, ...).
struct RngStream {
  std::uint64_t seed = 42;
  std::uint64_t stream_id = 0;
  std::uint32_t substream = 0;

  RngStream with_substream(std::uint32_t sub) const { return {seed, stream_id, sub}; }
};

// Philox4x32-10 block function (Salmon et al., SC'11).
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> ctr,
                                           std::array<std::uint32_t, 2> key);

// Counter-based uniform random bit generator. Output word k of a stream is a
// pure function of (seed, stream_id, substream, k).
class CounterEngine {
 public:
  using result_type = std::uint64_t;

  explicit CounterEngine(const RngStream& stream);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    refill();
    have_spare_ = true;
    return first_;
  }

  // Uniform double in (0, 1).
  double uniform01() { return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53; }

 private:
  void refill();

  std::array<std::uint32_t, 2> key_;
  std::uint32_t stream_lo_, stream_hi_, substream_;
  std::uint32_t block_ = 0;
  result_type first_ = 0, spare_ = 0;
  bool have_spare_ = false;
};

// Standard normal draws from a CounterEngine (ziggurat).
class NormalSampler {
 public:
  explicit NormalSampler(const RngStream& stream) : engine_(stream) {}

  double operator()() { return dist_(engine_); }
  CounterEngine& engine() { return engine_; }

 private:
  CounterEngine engine_;
  boost::random::normal_distribution<double> dist_;
};

}  // namespace strongrate
