#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <thread>

namespace fftdecomp::detail {

/// Worker count: explicit request, else FFTDECOMP_THREADS, else hardware.
inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("FFTDECOMP_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<int>(std::min<long>(v, 64));
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(std::min(hw, 16u)) : 1;
}

/// Run fn(0..count-1), strided across up to `threads` workers. Each index is
/// processed exactly once; results must be written to disjoint slots so the
/// outcome is independent of scheduling.
inline void parallel_over(std::size_t count, int threads,
                          const std::function<void(std::size_t)>& fn) {
  threads = static_cast<int>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < count; i += threads) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace fftdecomp::detail
