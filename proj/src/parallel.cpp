#include "phasecone/parallel.hpp"

#include <atomic>
#include <thread>

namespace phasecone {

namespace {
std::atomic<unsigned> g_workers{0};

unsigned effective_workers() {
  unsigned n = g_workers.load();
  if (n == 0) n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : n;
}
}  // namespace

void set_worker_count(unsigned n) { g_workers.store(n); }

unsigned worker_count() { return effective_workers(); }

std::vector<std::pair<std::size_t, std::size_t>> fixed_partition(
    std::size_t n) {
  constexpr std::size_t kMaxChunks = 64;
  std::vector<std::pair<std::size_t, std::size_t>> ranges;
  if (n == 0) return ranges;
  std::size_t chunks = n < kMaxChunks ? n : kMaxChunks;
  ranges.reserve(chunks);
  for (std::size_t c = 0; c < chunks; ++c)
    ranges.emplace_back(n * c / chunks, n * (c + 1) / chunks);
  return ranges;
}

void run_chunks(std::size_t chunk_count,
                const std::function<void(std::size_t)>& fn) {
  if (chunk_count == 0) return;
  unsigned workers = effective_workers();
  if (workers <= 1 || chunk_count == 1) {
    for (std::size_t c = 0; c < chunk_count; ++c) fn(c);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto drain = [&] {
    for (;;) {
      std::size_t c = next.fetch_add(1);
      if (c >= chunk_count) return;
      fn(c);
    }
  };
  std::vector<std::jthread> pool;
  unsigned spawned = workers - 1;
  if (spawned > chunk_count - 1) spawned = static_cast<unsigned>(chunk_count - 1);
  pool.reserve(spawned);
  for (unsigned t = 0; t < spawned; ++t) pool.emplace_back(drain);
  drain();
}

void parallel_for(std::size_t n,
                  const std::function<void(std::size_t, std::size_t)>& body) {
  const auto ranges = fixed_partition(n);
  run_chunks(ranges.size(), [&](std::size_t c) {
    body(ranges[c].first, ranges[c].second);
  });
}

}  // namespace phasecone
