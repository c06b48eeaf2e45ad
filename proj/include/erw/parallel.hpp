#pragma once
// Deterministic replica pool: a fixed set of workers consumes a replica-index
// queue. Each replica derives its own seeds from (master seed, index), so
// results do not depend on the worker count or on scheduling.

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace erw {

inline int resolve_workers(int requested) {
  if (requested > 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? (int)hw : 1;
}

// fn(replica_index) must write its result into storage owned by that index
template <class Fn>
void run_replicas(int64_t count, int workers, Fn&& fn) {
  workers = resolve_workers(workers);
  if (workers <= 1 || count <= 1) {
    for (int64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int64_t> next{0};
  auto worker = [&] {
    for (;;) {
      int64_t i = next.fetch_add(1);
      if (i >= count) return;
      fn(i);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve((size_t)workers);
  for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

}  // namespace erw
