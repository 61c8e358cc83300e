#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ncg::detail {

// Runs fn(i) for i in [0, count). Work items must write only to disjoint,
// index-addressed slots so results are identical regardless of scheduling.
// threads <= 0 picks the hardware count. The first exception is rethrown
// after all workers join.
template <class Fn>
void parallel_for(int64_t count, int threads, Fn&& fn) {
  if (count <= 0) return;
  if (threads <= 0)
    threads = static_cast<int>(std::thread::hardware_concurrency());
  if (threads < 1) threads = 1;
  if (static_cast<int64_t>(threads) > count)
    threads = static_cast<int>(count);

  if (threads == 1) {
    for (int64_t i = 0; i < count; ++i) fn(i);
    return;
  }

  std::atomic<int64_t> next{0};
  std::exception_ptr error;
  std::once_flag error_once;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const int64_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          std::call_once(error_once,
                         [&] { error = std::current_exception(); });
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace ncg::detail
