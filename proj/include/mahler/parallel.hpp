#pragma once

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace mahler {

// Worker count from MAHLER_WORKERS, else the given default.
inline int default_workers(int fallback = 1) {
  if (const char* s = std::getenv("MAHLER_WORKERS")) {
    try {
      int w = std::stoi(s);
      if (w >= 1) return w;
    } catch (...) {
    }
  }
  return std::max(1, fallback);
}

// Calls fn(i) for i in [0, n) on up to `workers` threads with static
// contiguous chunks. The first exception is rethrown on the caller.
template <class Fn>
void parallel_for(std::size_t n, int workers, Fn&& fn) {
  const std::size_t w = std::min<std::size_t>(static_cast<std::size_t>(std::max(1, workers)), n);
  if (w <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::exception_ptr err;
  std::mutex mu;
  std::vector<std::thread> pool;
  pool.reserve(w);
  for (std::size_t t = 0; t < w; ++t) {
    pool.emplace_back([&, t] {
      const std::size_t lo = n * t / w, hi = n * (t + 1) / w;
      try {
        for (std::size_t i = lo; i < hi; ++i) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!err) err = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

// Maps fn over the inputs in parallel; results keep input order.
template <class T, class Fn>
auto parallel_map(const std::vector<T>& in, int workers, Fn&& fn) {
  using R = decltype(fn(in.front()));
  std::vector<R> out(in.size());
  parallel_for(in.size(), workers, [&](std::size_t i) { out[i] = fn(in[i]); });
  return out;
}

}  // namespace mahler
