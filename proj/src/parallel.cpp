#include "bsm/parallel.hpp"

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

namespace bsm {

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_for(std::int64_t count, int workers,
                  const std::function<void(std::int64_t)>& fn) {
  if (count <= 0) return;
  int w = std::max(1, workers);
  if (w == 1 || count == 1) {
    for (std::int64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  w = static_cast<int>(std::min<std::int64_t>(w, count));
  std::vector<std::exception_ptr> errors(w);
  std::vector<std::thread> pool;
  pool.reserve(w);
  for (int t = 0; t < w; ++t) {
    // Static chunking: identical index-to-chunk assignment every run.
    std::int64_t lo = count * t / w;
    std::int64_t hi = count * (t + 1) / w;
    pool.emplace_back([&, t, lo, hi] {
      try {
        for (std::int64_t i = lo; i < hi; ++i) fn(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }
}

}  // namespace bsm
