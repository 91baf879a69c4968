#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace covering {

// Worker cap: GREEDY_COVER_THREADS when set, hardware concurrency otherwise.
std::size_t worker_count();

// Runs body(begin, end, chunk_id) over [0, n) split into fixed-size chunks.
// Chunk boundaries depend only on n, never on the worker count, so callers
// that merge per-chunk results by chunk id get identical output for any
// number of workers.
template <class Body>
void parallel_chunks(std::size_t n, std::size_t num_chunks, Body body) {
  if (n == 0) return;
  if (num_chunks > n) num_chunks = n;
  if (num_chunks == 0) num_chunks = 1;
  const std::size_t workers = std::min(worker_count(), num_chunks);
  const std::size_t per = (n + num_chunks - 1) / num_chunks;
  if (workers <= 1) {
    for (std::size_t c = 0; c < num_chunks; ++c) {
      const std::size_t begin = c * per;
      if (begin >= n) break;
      body(begin, std::min(begin + per, n), c);
    }
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::atomic<std::size_t> next{0};
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t c = next.fetch_add(1);
        if (c >= num_chunks) return;
        const std::size_t begin = c * per;
        if (begin >= n) return;
        body(begin, std::min(begin + per, n), c);
      }
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace covering
