#pragma once

#include <cstddef>
#include <functional>

namespace bisparse {

/// Worker cap for pointwise loops; 0 restores the hardware default.
void set_max_threads(int n);
int max_threads();

/// Runs fn over contiguous chunks [begin, end) of [0, n) on worker threads.
/// Chunking is deterministic; use only for disjoint writes.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace bisparse
