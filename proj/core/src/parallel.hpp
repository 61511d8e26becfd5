#pragma once

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

namespace elastica::detail {

/// Runs f(0..count-1) on up to `threads` workers with a static partition.
/// Callers write results into per-index slots and reduce in index order, so
/// output does not depend on the thread count. The first exception (lowest
/// index) is rethrown.
template <class F>
void parallel_for(int count, int threads, F&& f) {
  threads = std::clamp(threads, 1, std::max(1, count));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) f(i);
    return;
  }
  std::vector<std::exception_ptr> errors(count);
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (int i = t; i < count; i += threads) {
        try {
          f(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace elastica::detail
