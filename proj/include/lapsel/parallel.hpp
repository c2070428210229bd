#pragma once

#include <algorithm>
#include <functional>
#include <thread>
#include <vector>

namespace lapsel {

inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

/// Runs body(begin, end) over contiguous chunks of [0, n). The partition
/// depends only on (n, threads), never on scheduling, so any algorithm whose
/// per-index work is independent produces identical results for every thread
/// count.
inline void parallel_for(long n, int threads,
                         const std::function<void(long, long)>& body) {
  threads = std::min<long>(resolve_threads(threads), std::max<long>(n, 1));
  if (threads <= 1 || n <= 1) {
    body(0, n);
    return;
  }
  const long chunk = (n + threads - 1) / threads;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(threads));
  for (int t = 0; t < threads; ++t) {
    const long lo = t * chunk;
    const long hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&body, lo, hi] { body(lo, hi); });
  }
  for (auto& th : pool) th.join();
}

}  // namespace lapsel
