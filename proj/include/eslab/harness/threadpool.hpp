#pragma once

#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace eslab::cli {

/// Runs fn(0..n-1) across `threads` workers. Tasks write to disjoint
/// result slots, so the outcome is independent of scheduling.
inline void parallel_for(std::size_t n, int threads,
                         const std::function<void(std::size_t)>& fn) {
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1))
      fn(i);
  };
  std::vector<std::thread> pool;
  const int spawned = std::min<int>(threads, static_cast<int>(n));
  pool.reserve(spawned);
  for (int t = 0; t < spawned; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

/// Worker cap: ES_LAB_THREADS when set, otherwise hardware concurrency.
int resolve_thread_count();

}  // namespace eslab::cli
