#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace qsl {

/// Worker count: hardware concurrency, capped by the QSL_THREADS
/// environment variable when it is set to a positive integer.
inline unsigned thread_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("QSL_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap > 0) n = std::min(n, static_cast<unsigned>(cap));
  }
  return n;
}

/// out[i] = fn(i) for i in [0, count). Results land at their input index, so
/// the output is independent of scheduling. The first exception thrown by a
/// task is rethrown on the calling thread.
template <class Result, class Fn>
std::vector<Result> parallel_map(std::size_t count, Fn&& fn) {
  std::vector<Result> out(count);
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(thread_count(), count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        out[i] = fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace qsl
