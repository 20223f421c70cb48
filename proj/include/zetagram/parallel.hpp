#pragma once

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace zetagram {

// Number of worker threads to use when a caller does not say: the
// ZETAGRAM_WORKERS environment variable, else 1.
int default_workers();

// Fixed chunk width used by every parallel sweep. Chunk boundaries depend
// only on the problem size, never on the worker count, so per-chunk results
// can be folded in chunk order and every aggregate (including floating-point
// sums) is bit-identical for any number of workers.
inline constexpr long long kChunkSize = 256;

inline long long chunk_count(long long n) {
  return n <= 0 ? 0 : (n + kChunkSize - 1) / kChunkSize;
}

// Runs fn(chunk_index, lo, hi) over the chunk decomposition of [0, n).
// fn must only write to state owned by its chunk slot.
template <class Fn>
void parallel_chunks(long long n, int workers, Fn&& fn) {
  const long long nchunks = chunk_count(n);
  if (nchunks == 0) return;
  if (workers <= 1 || nchunks == 1) {
    for (long long c = 0; c < nchunks; ++c) {
      const long long lo = c * kChunkSize;
      const long long hi = lo + kChunkSize < n ? lo + kChunkSize : n;
      fn(c, lo, hi);
    }
    return;
  }
  std::atomic<long long> next{0};
  auto work = [&] {
    for (;;) {
      const long long c = next.fetch_add(1);
      if (c >= nchunks) return;
      const long long lo = c * kChunkSize;
      const long long hi = lo + kChunkSize < n ? lo + kChunkSize : n;
      fn(c, lo, hi);
    }
  };
  std::vector<std::thread> pool;
  const int nthreads = workers < static_cast<int>(nchunks) ? workers : static_cast<int>(nchunks);
  pool.reserve(static_cast<size_t>(nthreads));
  for (int i = 0; i < nthreads; ++i) pool.emplace_back(work);
  for (auto& th : pool) th.join();
}

}  // namespace zetagram
