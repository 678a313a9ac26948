#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>
#include <vector>

namespace uptail {

/// Worker cap: UPTAIL_THREADS when set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
int worker_count();

/// Runs body(block) for every block in [0, blocks) on up to worker_count()
/// threads. Blocks are claimed in increasing order; the first exception is
/// rethrown after all workers stop.
template <class Body>
void parallel_blocks(int blocks, Body&& body) {
  const int workers = std::min(worker_count(), blocks);
  if (workers <= 1) {
    for (int b = 0; b < blocks; ++b) body(b);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  auto run = [&] {
    for (int b = next++; b < blocks && !failed; b = next++) {
      try {
        body(b);
      } catch (...) {
        if (!failed.exchange(true)) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace uptail
