#pragma once

#include <cstddef>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace pstable {

// Number of worker threads: PSTABLE_THREADS if set, else hardware concurrency.
inline int thread_count() {
  if (const char* env = std::getenv("PSTABLE_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) return v;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc ? static_cast<int>(hc) : 1;
}

// Runs fn(i) for i in [0, count). Serial when the pool size is 1 or the
// range is too small to be worth forking.
inline void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
  int workers = thread_count();
  if (workers <= 1 || count < 64) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::size_t nw = static_cast<std::size_t>(workers);
  if (nw > count) nw = count;
  std::vector<std::thread> pool;
  pool.reserve(nw);
  for (std::size_t w = 0; w < nw; ++w) {
    pool.emplace_back([&, w] {
      std::size_t lo = count * w / nw, hi = count * (w + 1) / nw;
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace pstable
