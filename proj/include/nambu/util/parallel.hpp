#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace nambu {

/// Smallest index i in [0, count) with ok(i) == false, or nullopt.
///
/// Work is spread over hardware threads when more than one is available;
/// the reported index is the least failing one regardless of scheduling.
template <class Pred>
std::optional<std::size_t> first_failure(std::size_t count, Pred ok) {
  const std::size_t workers =
      std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), count);
  if (workers <= 1 || count < 64) {
    for (std::size_t i = 0; i < count; ++i)
      if (!ok(i)) return i;
    return std::nullopt;
  }

  std::atomic<std::size_t> best{count};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&](std::size_t start) {
    try {
      for (std::size_t i = start; i < count; i += workers) {
        if (i >= best.load(std::memory_order_relaxed)) return;
        if (!ok(i)) {
          std::size_t cur = best.load();
          while (i < cur && !best.compare_exchange_weak(cur, i)) {
          }
          return;
        }
      }
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run, w);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  if (best.load() == count) return std::nullopt;
  return best.load();
}

}  // namespace nambu
