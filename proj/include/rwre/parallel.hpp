#pragma once

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace rwre {

// Runs fn(i) for i in [0, n). Work is pulled from a shared counter, so the
// assignment of indices to workers is arbitrary; fn must depend only on i
// (each replica derives its own rng streams from its index). Callers write
// results into per-index slots and reduce in index order afterwards.
template <typename Fn>
void parallel_for(std::int64_t n, int workers, Fn&& fn) {
  if (workers <= 1 || n < 2) {
    for (std::int64_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::int64_t> next{0};
  auto body = [&] {
    for (;;) {
      const std::int64_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= n) return;
      fn(i);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers - 1));
  for (int w = 1; w < workers; ++w) pool.emplace_back(body);
  body();
  for (auto& t : pool) t.join();
}

}  // namespace rwre
