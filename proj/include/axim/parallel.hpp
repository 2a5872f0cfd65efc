#pragma once

#include <cstdint>
#include <functional>

namespace axim {

// Splits [0, n) into at most `threads` contiguous chunks and runs
// chunk(begin, end) on each, joining before returning. The partition is a
// pure function of (n, threads), and callers only use it for work units
// whose results do not depend on the partition, so outputs are identical
// at every thread count.
void parallel_for(std::int64_t n, int threads,
                  const std::function<void(std::int64_t, std::int64_t)>& chunk);

}  // namespace axim
