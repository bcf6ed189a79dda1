#pragma once

#include <cstdint>
#include <functional>

namespace bsm {

// 0 means "ask the hardware"; anything else is clamped below by 1.
int resolve_workers(int requested);

// Runs fn(i) for all i in [0, count) across the given number of threads.
// Work splits into contiguous static chunks, so which thread runs an index
// never depends on timing; callers get determinism by writing only to
// per-index slots. Exceptions from fn propagate (first chunk wins).
void parallel_for(std::int64_t count, int workers,
                  const std::function<void(std::int64_t)>& fn);

}  // namespace bsm
