#include "axim/parallel.hpp"

#include <algorithm>
#include <thread>
#include <vector>

namespace axim {

void parallel_for(std::int64_t n, int threads,
                  const std::function<void(std::int64_t, std::int64_t)>& chunk) {
  if (n <= 0) return;
  const int workers = std::min<std::int64_t>(std::max(threads, 1), n);
  if (workers == 1) {
    chunk(0, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  const std::int64_t base = n / workers;
  const std::int64_t extra = n % workers;
  std::int64_t begin = 0;
  for (int w = 0; w < workers; ++w) {
    const std::int64_t end = begin + base + (w < extra ? 1 : 0);
    pool.emplace_back([&chunk, begin, end] { chunk(begin, end); });
    begin = end;
  }
  for (std::thread& t : pool) t.join();
}

}  // namespace axim
