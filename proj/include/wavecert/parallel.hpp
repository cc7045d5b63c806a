// =============================================================================
// parallel.hpp
//
// Deterministic data-parallel map: every index in [0, n) is computed exactly
// once by a pure function writing to its own slot, so the worker count can
// only change scheduling, never values. This is the sole concurrency
// primitive in the library.
// =============================================================================
#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace wavecert {

inline unsigned hardware_workers() {
  const unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1u : n;
}

template <class Fn>
void parallel_for_index(std::size_t n, unsigned workers, Fn&& fn) {
  if (n == 0) return;
  if (workers == 0) workers = 1;
  if (workers > n) workers = static_cast<unsigned>(n);
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex err_mutex;
  auto body = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= n || failed.load(std::memory_order_relaxed)) return;
      try {
        fn(i);
      } catch (...) {
        std::scoped_lock lock(err_mutex);
        if (!first_error) first_error = std::current_exception();
        failed.store(true);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(body);
  for (auto& t : pool) t.join();
  if (failed) std::rethrow_exception(first_error);
}

}  // namespace wavecert
