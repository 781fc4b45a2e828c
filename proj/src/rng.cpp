#include "strongrate/rng.hpp"

namespace strongrate {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> c,
                                           std::array<std::uint32_t, 2> k) {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      k[0] += kPhiloxW0;
      k[1] += kPhiloxW1;
    }
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kPhiloxM0, c[0], hi0, lo0);
    mulhilo(kPhiloxM1, c[2], hi1, lo1);
    c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
  }
  return c;
}

CounterEngine::CounterEngine(const RngStream& s)
    : key_{static_cast<std::uint32_t>(s.seed), static_cast<std::uint32_t>(s.seed >> 32)},
      stream_lo_(static_cast<std::uint32_t>(s.stream_id)),
      stream_hi_(static_cast<std::uint32_t>(s.stream_id >> 32)),
      substream_(s.substream) {}

void CounterEngine::refill() {
  const auto out = philox4x32_10({block_, substream_, stream_lo_, stream_hi_}, key_);
  ++block_;
  first_ = (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
  spare_ = (static_cast<std::uint64_t>(out[2]) << 32) | out[3];
}

}  // namespace strongrate
