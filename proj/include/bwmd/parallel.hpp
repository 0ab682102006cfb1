#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace bwmd {

inline unsigned default_thread_count() {
  unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : n;
}

/// Run body(i) for i in [0, n) on up to `threads` workers. Work is handed out
/// as contiguous blocks so callers can rely on cache locality, and every index
/// is processed exactly once regardless of thread count, so results written to
/// per-index slots are identical for any `threads` value.
template <typename Body>
void parallel_for(std::size_t n, unsigned threads, Body&& body) {
  if (threads <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  if (threads > n) threads = static_cast<unsigned>(n);
  std::atomic<std::size_t> next_block{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  // Blocks much smaller than n/threads so uneven per-item cost still balances.
  std::size_t block = n / (static_cast<std::size_t>(threads) * 8);
  if (block == 0) block = 1;
  auto worker = [&]() {
    try {
      for (;;) {
        std::size_t begin = next_block.fetch_add(block);
        if (begin >= n || failed.load(std::memory_order_relaxed)) return;
        std::size_t end = begin + block < n ? begin + block : n;
        for (std::size_t i = begin; i < end; ++i) body(i);
      }
    } catch (...) {
      if (!failed.exchange(true)) error = std::current_exception();
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads - 1);
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (failed.load()) std::rethrow_exception(error);
}

}  // namespace bwmd
