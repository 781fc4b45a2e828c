#include <doctest.h>

#include <cmath>
#include <set>

#include "strongrate/rng.hpp"

using namespace strongrate;

TEST_CASE("philox4x32-10 known answers") {
  using A4 = std::array<std::uint32_t, 4>;
  CHECK(philox4x32_10({0, 0, 0, 0}, {0, 0}) == A4{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(philox4x32_10({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
        A4{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(philox4x32_10({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
        A4{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("streams are reproducible and distinct") {
  CounterEngine a(RngStream{7, 3, 1}), b(RngStream{7, 3, 1});
  for (int i = 0; i < 100; ++i) REQUIRE(a() == b());
  std::set<std::uint64_t> firsts;
  for (std::uint64_t id = 0; id < 4; ++id) {
    for (std::uint32_t sub = 0; sub < 4; ++sub) firsts.insert(CounterEngine(RngStream{7, id, sub})());
  }
  firsts.insert(CounterEngine(RngStream{8, 0, 0})());
  CHECK(firsts.size() == 17);
}

TEST_CASE("uniforms lie strictly inside (0, 1)") {
  CounterEngine e(RngStream{});
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = e.uniform01();
    REQUIRE(u > 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  CHECK(std::abs(sum / 100000 - 0.5) < 4.0 * std::sqrt(1.0 / 12.0 / 100000));
}

TEST_CASE("normal sampler moments") {
  NormalSampler n(RngStream{1, 2, 3});
  const int m = 200000;
  double s1 = 0.0, s2 = 0.0;
  for (int i = 0; i < m; ++i) {
    const double z = n();
    s1 += z;
    s2 += z * z;
  }
  CHECK(std::abs(s1 / m) < 4.0 / std::sqrt(m));
  CHECK(std::abs(s2 / m - 1.0) < 4.0 * std::sqrt(2.0 / m));
}
