#pragma once

#include "strongrate/drift.hpp"

namespace testsupport {

// mu_0.75 with default settings, built once per process.
inline const strongrate::DriftSpec& mu075() {
  static const strongrate::DriftSpec d = strongrate::make_drift(strongrate::drift_kind::MuS{});
  return d;
}

// Independent high-precision values of mu_0.75 (mpmath quadosc, 30 digits).
struct MuOracle {
  double x, value;
};
inline constexpr MuOracle kMu075[] = {
    {0.0, 2.08856526863055838},    {0.5, 0.434575920972840411},  {1.0, 0.214472503695793494},
    {2.0, 0.0833517528940397135},  {5.0, 0.0174025024309797928}, {10.0, 0.00462863836283242067},
};

}  // namespace testsupport
