#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

namespace phasecone {

// Worker threads used by the helpers below.  0 means one thread per hardware
// core.  The count never affects results, only wall time.
void set_worker_count(unsigned n);
unsigned worker_count();

// Partition of [0, n) into at most 64 contiguous chunks.  Depends only on n,
// never on the worker count; reductions combined in chunk order are therefore
// reproducible under any thread setting.
std::vector<std::pair<std::size_t, std::size_t>> fixed_partition(std::size_t n);

// Runs fn(c) for each chunk index c in [0, chunk_count) on the worker pool.
void run_chunks(std::size_t chunk_count,
                const std::function<void(std::size_t)>& fn);

// Runs body(begin, end) over fixed_partition(n).
void parallel_for(std::size_t n,
                  const std::function<void(std::size_t, std::size_t)>& body);

// Sum of term(i) for i in [0, n), accumulated per chunk and combined in chunk
// order.  T needs operator+=.
template <class T>
T parallel_sum(std::size_t n, const std::function<T(std::size_t)>& term,
               T zero) {
  const auto ranges = fixed_partition(n);
  std::vector<T> partial(ranges.size(), zero);
  run_chunks(ranges.size(), [&](std::size_t c) {
    T acc = zero;
    for (std::size_t i = ranges[c].first; i < ranges[c].second; ++i)
      acc += term(i);
    partial[c] = std::move(acc);
  });
  T total = std::move(zero);
  for (T& t : partial) total += t;
  return total;
}

}  // namespace phasecone
