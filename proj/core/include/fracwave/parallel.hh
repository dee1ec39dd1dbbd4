#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace fracwave {

// Worker count: FRACWAVE_THREADS env var wins over the config key; 0 means
// hardware concurrency.
inline int resolve_threads(int configured) {
  if (const char* env = std::getenv("FRACWAVE_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
    configured = 0;
  }
  if (configured > 0) return configured;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(i) for i in [0, count) on up to `threads` workers.  Callers keep
// determinism by writing result i into slot i and reducing sequentially
// afterwards; the schedule itself carries no state.  The first exception
// thrown by any worker is rethrown here.
inline void parallel_for(long long count, int threads, const std::function<void(long long)>& fn) {
  if (count <= 0) return;
  const int workers = static_cast<int>(std::min<long long>(std::max(threads, 1), count));
  if (workers == 1) {
    for (long long i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<long long> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex error_mu;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const long long i = next.fetch_add(1);
        if (i >= count || failed.load()) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!first_error) first_error = std::current_exception();
          failed.store(true);
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace fracwave
