#pragma once

#include <cstddef>
#include <functional>

namespace strongrate {

// Environment variable holding the default worker count.
inline constexpr const char* kThreadsEnvVar = "STRONGRATE_THREADS";

// STRONGRATE_THREADS if set to a positive integer, else the hardware
// concurrency (at least 1).
unsigned default_workers();

// Calls body(i) for i in [0, count) on `workers` threads (0 = default).
// Indices are handed out in chunks; results must go to index-addressed slots.
// The first exception thrown by any body is rethrown after all workers join.
void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& body);

}  // namespace strongrate
