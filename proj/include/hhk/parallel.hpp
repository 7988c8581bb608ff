#pragma once

#include <cstddef>
#include <functional>

namespace hhk {

/// Worker count: HHK_THREADS if set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
int worker_count();

/// Splits [0, n) into contiguous chunks, one per worker, and calls
/// body(begin, end, worker) for each. Chunk boundaries depend only on n and
/// the worker count, so callers that merge per-chunk results in chunk order
/// are deterministic. Exceptions from any chunk are rethrown (first chunk
/// wins).
void parallel_for(std::size_t n,
                  const std::function<void(std::size_t, std::size_t, int)>& body);

}  // namespace hhk
