#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace msaug {

/// Caps the number of worker threads used by the library. 0 restores the
/// default, which is MSAUG_THREADS from the environment or the hardware
/// concurrency.
void set_num_threads(unsigned n);
unsigned num_threads();

/// Splits [0, n) into contiguous chunks, one per worker, and calls
/// body(begin, end) on each. Runs inline when one worker suffices.
template <class Body>
void parallel_for(std::size_t n, Body&& body, std::size_t min_chunk = 1 << 14) {
  const std::size_t workers =
      std::min<std::size_t>(num_threads(), std::max<std::size_t>(1, n / min_chunk));
  if (workers <= 1) {
    body(std::size_t{0}, n);
    return;
  }
  const std::size_t chunk = (n + workers - 1) / workers;
  std::vector<std::jthread> pool;
  pool.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) {
    const std::size_t b = w * chunk;
    const std::size_t e = std::min(n, b + chunk);
    if (b < e) pool.emplace_back([&body, b, e] { body(b, e); });
  }
  body(std::size_t{0}, std::min(n, chunk));
}

}  // namespace msaug
