#pragma once

#include <algorithm>
#include <thread>
#include <vector>

namespace dqw {

// Static block partition of [begin, end) over hardware threads. Tasks must
// write disjoint output slots; results are then schedule-independent.
template <class F>
void parallel_for(int begin, int end, bool parallel, F&& f) {
  const int count = end - begin;
  if (count <= 0) return;
  unsigned hw = std::thread::hardware_concurrency();
  int workers = parallel ? static_cast<int>(std::max(1u, hw)) : 1;
  workers = std::min(workers, count);
  if (workers == 1) {
    for (int i = begin; i < end; ++i) f(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  int chunk = (count + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    int lo = begin + w * chunk;
    int hi = std::min(end, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&f, lo, hi] {
      for (int i = lo; i < hi; ++i) f(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace dqw
