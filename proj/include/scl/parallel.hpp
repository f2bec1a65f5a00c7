#pragma once

#include <future>
#include <thread>
#include <vector>

#include "scl/types.hpp"

namespace scl {

// Runs fn(i) for i in [0, n). Work is chunked across std::async tasks; fn must write
// only to slot i of its output, so the result never depends on scheduling.
template <class Fn>
void parallel_for(Index n, bool enable, Fn&& fn) {
  if (n <= 0) return;
  const unsigned hw = std::thread::hardware_concurrency();
  const Index workers =
      enable ? std::min<Index>(n, hw > 0 ? static_cast<Index>(hw) : 1) : 1;
  if (workers <= 1) {
    for (Index i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::future<void>> tasks;
  tasks.reserve(static_cast<std::size_t>(workers));
  const Index chunk = (n + workers - 1) / workers;
  for (Index w = 0; w < workers; ++w) {
    const Index lo = w * chunk;
    const Index hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    tasks.push_back(std::async(std::launch::async, [lo, hi, &fn] {
      for (Index i = lo; i < hi; ++i) fn(i);
    }));
  }
  for (auto& t : tasks) t.get();
}

}  // namespace scl
