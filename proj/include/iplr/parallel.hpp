#ifndef IPLR_PARALLEL_HPP
#define IPLR_PARALLEL_HPP

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

// Deterministic work-sharing. Work is split into chunks whose boundaries
// depend only on the problem size, partial results land in chunk-indexed
// slots, and reductions fold the slots pairwise in a fixed order, so results
// are bit-identical for any thread count (IPLR_THREADS included).

namespace iplr {

// IPLR_THREADS when set and >= 1, otherwise hardware concurrency.
unsigned thread_budget();

namespace detail {

template <class T, class Combine>
T pairwise_fold(const std::vector<T>& v, size_t lo, size_t hi,
                const Combine& combine, const T& identity) {
  if (hi == lo) return identity;
  if (hi - lo == 1) return v[lo];
  size_t mid = lo + (hi - lo) / 2;
  return combine(pairwise_fold(v, lo, mid, combine, identity),
                 pairwise_fold(v, mid, hi, combine, identity));
}

template <class Body>
void run_chunks(uint64_t n_chunks, const Body& body) {
  unsigned workers = thread_budget();
  if (workers > n_chunks) workers = static_cast<unsigned>(n_chunks);
  if (workers <= 1) {
    for (uint64_t c = 0; c < n_chunks; ++c) body(c);
    return;
  }
  std::atomic<uint64_t> next{0};
  auto worker = [&]() {
    for (;;) {
      uint64_t c = next.fetch_add(1);
      if (c >= n_chunks) break;
      body(c);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (unsigned t = 1; t < workers; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
}

}  // namespace detail

// map(begin, end) -> partial over [begin, end); combine(a, b) folds partials.
template <class T, class Map, class Combine>
T chunked_reduce(uint64_t total, uint64_t chunk_size, const Map& map,
                 const Combine& combine, T identity) {
  if (total == 0) return identity;
  if (chunk_size == 0) chunk_size = 1;
  const uint64_t n_chunks = (total + chunk_size - 1) / chunk_size;
  std::vector<T> partials(n_chunks, identity);
  detail::run_chunks(n_chunks, [&](uint64_t c) {
    uint64_t lo = c * chunk_size;
    uint64_t hi = lo + chunk_size < total ? lo + chunk_size : total;
    partials[c] = map(lo, hi);
  });
  return detail::pairwise_fold(partials, 0, partials.size(), combine,
                               identity);
}

// Plain parallel loop over chunk ranges (no reduction).
template <class Body>
void parallel_chunks(uint64_t total, uint64_t chunk_size, const Body& body) {
  if (total == 0) return;
  if (chunk_size == 0) chunk_size = 1;
  const uint64_t n_chunks = (total + chunk_size - 1) / chunk_size;
  detail::run_chunks(n_chunks, [&](uint64_t c) {
    uint64_t lo = c * chunk_size;
    uint64_t hi = lo + chunk_size < total ? lo + chunk_size : total;
    body(lo, hi);
  });
}

}  // namespace iplr

#endif
