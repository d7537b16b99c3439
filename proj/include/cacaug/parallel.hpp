#pragma once

#include <cstddef>
#include <functional>

namespace cacaug {

/// Worker count: CACAUG_THREADS when set to a positive integer, otherwise
/// the hardware concurrency (at least 1).
int worker_count();

/// Runs fn(0..n-1) across worker_count() threads. Each index runs exactly
/// once; callers write results into per-index slots to stay deterministic.
/// The first exception thrown by any call is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace cacaug
