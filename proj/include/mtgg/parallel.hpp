#pragma once

#include <cstddef>
#include <functional>

namespace mtgg {

// Resolves a requested thread count: n > 0 is taken as-is, n <= 0 falls back
// to the MTGG_THREADS environment variable and then to the hardware count.
int resolve_threads(int requested);

// Runs fn(begin, end) over a partition of [0, n) on `threads` threads.
// Partition boundaries depend only on n and threads, so callers that write
// results by index produce identical output for every thread count.
void parallel_for(std::size_t n, int threads,
                  const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace mtgg
