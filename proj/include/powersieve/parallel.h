#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace powersieve {

// Splits [0, n) into `workers` contiguous chunks and runs body(begin, end,
// chunk) on each. Chunk boundaries depend only on n and workers, so any
// per-chunk reduction merged in chunk order is deterministic.
template <typename Body>
void parallel_chunks(std::size_t n, unsigned workers, Body&& body) {
  workers = std::max(1u, workers);
  if (workers == 1 || n < 2) {
    body(std::size_t{0}, n, 0u);
    return;
  }
  const std::size_t chunks = std::min<std::size_t>(workers, n);
  std::vector<std::thread> pool;
  pool.reserve(chunks);
  for (std::size_t c = 0; c < chunks; ++c) {
    const std::size_t begin = n * c / chunks;
    const std::size_t end = n * (c + 1) / chunks;
    pool.emplace_back([&body, begin, end, c] {
      body(begin, end, static_cast<unsigned>(c));
    });
  }
  for (auto& t : pool) t.join();
}

inline unsigned default_workers() {
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace powersieve
