#pragma once

#include <cstddef>
#include <functional>

namespace cuspbend {

/// Worker count: hardware concurrency, capped by the CUSPBEND_THREADS
/// environment variable when it holds a positive integer.
std::size_t worker_count();

/// Calls body(i) for i in [0, count) on up to worker_count() threads. Each
/// index is visited at most once (exactly once unless a body throws);
/// callers write results into slot i so the output order never depends on
/// scheduling. The first exception thrown by a body is rethrown after all
/// workers stop.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace cuspbend
