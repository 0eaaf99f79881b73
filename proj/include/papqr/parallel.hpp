#pragma once

#include <atomic>
#include <thread>
#include <vector>

namespace papqr {

// Runs fn(0), ..., fn(count - 1) on up to `workers` threads. Each index is
// claimed exactly once; callers must make fn(i) write only to slot i of any
// shared output so scheduling cannot influence results.
template <typename F>
void parallel_trials(int count, int workers, F&& fn) {
  if (workers <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  if (workers > count) workers = count;
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace papqr
