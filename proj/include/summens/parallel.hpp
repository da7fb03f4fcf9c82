#pragma once

#include <cstddef>
#include <functional>

namespace summens {

// Runs fn(0..n-1) across at most `workers` threads with a static block
// partition. Callers write results into preallocated slots by index, so
// the outcome is identical at any worker count. The first exception (if
// any) is rethrown after all workers join.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn);

}  // namespace summens
