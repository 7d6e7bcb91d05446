#pragma once

#include <algorithm>
#include <thread>
#include <vector>

namespace koch {

// Runs fn(i) for i in [0, count) on up to `threads` threads, striding by thread.
template <typename F>
void parallel_for(int count, int threads, F&& fn) {
  threads = std::max(1, std::min(threads, count));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      for (int i = t; i < count; i += threads) fn(i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace koch
