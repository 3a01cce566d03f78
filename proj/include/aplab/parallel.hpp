#pragma once

#include <cstddef>
#include <functional>

namespace aplab {

/// Worker count: hardware concurrency, capped by APERIODIC_LAB_THREADS.
int worker_count();

/// Runs body(worker, begin, end) on contiguous chunks of [0, n). Chunk
/// boundaries depend only on n and the worker count.
void parallel_chunks(std::size_t n,
                     const std::function<void(int, std::size_t, std::size_t)>& body);

}  // namespace aplab
