#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace hivelab {

/// Worker budget: explicit argument, else HIVELAB_WORKERS, else hardware
/// concurrency.
inline int worker_count(int requested = -1) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("HIVELAB_WORKERS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

/// Runs fn(0..count-1) across a worker pool. Callers own result placement by
/// index, so aggregation is order-independent. The first exception thrown by
/// any worker is rethrown after all workers finish.
inline void parallel_for(long long count,
                         const std::function<void(long long)>& fn,
                         int workers = -1) {
  if (count <= 0) return;
  const int w = std::min<long long>(worker_count(workers), count);
  if (w <= 1) {
    for (long long i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<long long> next{0};
  std::exception_ptr first_error;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  pool.reserve(w);
  for (int t = 0; t < w; ++t) {
    pool.emplace_back([&]() {
      while (true) {
        const long long i = next.fetch_add(1);
        if (i >= count || failed.load(std::memory_order_relaxed)) return;
        try {
          fn(i);
        } catch (...) {
          if (!failed.exchange(true)) first_error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace hivelab
