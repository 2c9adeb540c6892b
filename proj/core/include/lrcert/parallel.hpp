#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace lrcert {

/// Runs fn(i) for i in [0, n) on at most `workers` threads. Each index is visited once;
/// the first exception thrown by any worker is rethrown after all threads join.
template <typename Fn>
void parallel_for(std::size_t n, int workers, Fn&& fn) {
  const std::size_t pool = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(workers, 1)));
  if (pool <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> threads;
  threads.reserve(pool);
  for (std::size_t w = 0; w < pool; ++w) {
    threads.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next.store(n);
        }
      }
    });
  }
  for (auto& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace lrcert
