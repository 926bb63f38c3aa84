#pragma once

#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace sbmclique {

inline int worker_count() {
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

// Static block partition of [begin, end) over worker threads.  The body
// receives (index, worker_id); results must be written to disjoint slots so
// the outcome is independent of scheduling.
inline void parallel_for(std::int64_t begin, std::int64_t end,
                         const std::function<void(std::int64_t, int)>& body,
                         int workers = 0) {
  if (workers <= 0) workers = worker_count();
  const std::int64_t count = end - begin;
  if (count <= 0) return;
  if (workers == 1 || count == 1) {
    for (std::int64_t i = begin; i < end; ++i) body(i, 0);
    return;
  }
  if (workers > count) workers = static_cast<int>(count);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    const std::int64_t lo = begin + count * w / workers;
    const std::int64_t hi = begin + count * (w + 1) / workers;
    pool.emplace_back([&body, lo, hi, w] {
      for (std::int64_t i = lo; i < hi; ++i) body(i, w);
    });
  }
  for (auto& t : pool) t.join();
}

// Round-robin variant; balances triangular loops where the work per index
// shrinks with i.
inline void parallel_for_strided(
    std::int64_t begin, std::int64_t end,
    const std::function<void(std::int64_t, int)>& body, int workers = 0) {
  if (workers <= 0) workers = worker_count();
  const std::int64_t count = end - begin;
  if (count <= 0) return;
  if (workers == 1 || count == 1) {
    for (std::int64_t i = begin; i < end; ++i) body(i, 0);
    return;
  }
  if (workers > count) workers = static_cast<int>(count);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&body, begin, end, w, workers] {
      for (std::int64_t i = begin + w; i < end; i += workers) body(i, w);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace sbmclique
