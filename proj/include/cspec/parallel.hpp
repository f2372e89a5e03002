#pragma once

#include <cstddef>
#include <functional>

namespace cspec {

// Worker count from CSPEC_THREADS, else the hardware concurrency (>= 1).
unsigned thread_count();

// Calls fn(i) for i in [0, n), split into contiguous blocks across
// threads. Results must be written to per-index slots so the output does
// not depend on scheduling.
void parallel_for(size_t n, const std::function<void(size_t)>& fn);

}  // namespace cspec
