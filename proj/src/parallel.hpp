#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace relieforge::detail {

// Runs fn(begin, end) over contiguous chunks of [0, count). Chunk
// boundaries depend only on count and threads, never on scheduling.
template <typename Fn>
void parallel_chunks(std::size_t count, unsigned threads, Fn&& fn) {
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(threads, count));
  if (workers == 1) {
    fn(std::size_t{0}, count);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  const std::size_t per = count / workers;
  const std::size_t extra = count % workers;
  std::size_t begin = 0;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t end = begin + per + (w < extra ? 1 : 0);
    pool.emplace_back([&fn, begin, end] { fn(begin, end); });
    begin = end;
  }
}

}  // namespace relieforge::detail
