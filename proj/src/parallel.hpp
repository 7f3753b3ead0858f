#pragma once

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace rkg::detail {

/// Worker count: RKG_THREADS if set, else hardware concurrency.
inline unsigned worker_count(std::size_t work_items) {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("RKG_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) hw = static_cast<unsigned>(v);
  }
  return static_cast<unsigned>(std::max<std::size_t>(1, std::min<std::size_t>(hw, work_items)));
}

/// Runs body(begin, end, chunk) over contiguous chunks of [0, count); one
/// chunk per worker. Chunk boundaries depend only on the worker count, so
/// callers must reduce in an order-independent way (or per index).
template <class Body>
void parallel_chunks(std::size_t count, Body&& body) {
  const unsigned workers = worker_count(count);
  if (workers <= 1) {
    body(std::size_t{0}, count, 0u);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  const std::size_t step = (count + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t begin = std::min(count, w * step);
    const std::size_t end = std::min(count, begin + step);
    pool.emplace_back([&body, begin, end, w] { body(begin, end, w); });
  }
}

}  // namespace rkg::detail
