#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace dzeta::par {

inline unsigned resolve_threads(unsigned requested) {
  if (requested) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

// Runs body(begin, end) over contiguous chunks of [0, count). Results must be
// written to disjoint slots so the outcome is independent of the split. The
// first exception (by chunk order) is rethrown.
template <class Body>
void parallel_chunks(std::size_t count, unsigned threads, Body body, std::size_t grain = 4096) {
  const std::size_t t = std::min<std::size_t>(resolve_threads(threads), std::max<std::size_t>(1, count / grain));
  if (t <= 1) {
    body(std::size_t{0}, count);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(t);
  const std::size_t step = (count + t - 1) / t;
  for (std::size_t k = 0; k < t; ++k) {
    const std::size_t lo = std::min(count, k * step), hi = std::min(count, lo + step);
    pool.emplace_back([&, k, lo, hi] {
      try {
        body(lo, hi);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace dzeta::par
