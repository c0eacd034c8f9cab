#pragma once

#include <cstddef>
#include <functional>

namespace mdf {

/// Environment variable consulted for the default worker count.
inline constexpr const char* kWorkersEnv = "MDF_WORKERS";

/// Worker count from MDF_WORKERS, else the hardware concurrency (at least 1).
std::size_t default_workers();

/// Runs body(index) for every index in [0, count) on up to `workers` threads.
///
/// Indices are handed out dynamically, so callers must write results into
/// per-index slots to stay deterministic. If any body throws, the exception
/// raised by the smallest failing index is rethrown after all threads join.
void parallel_for(std::size_t count, std::size_t workers,
                  const std::function<void(std::size_t)>& body);

}  // namespace mdf
