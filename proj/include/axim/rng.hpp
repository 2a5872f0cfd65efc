#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace axim {

// Counter-based deterministic generator: every draw is a pure function of
// (seed, counter), so streams are reproducible regardless of evaluation
// order or thread count.
inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(splitmix64(seed ^ 0x5BF03635DE1D4CD1ULL)) {}

  // Uniform in the open interval (0, 1).
  double uniform(std::uint64_t counter) const {
    std::uint64_t z = splitmix64(seed_ ^ splitmix64(counter));
    return (static_cast<double>(z >> 11) + 0.5) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller; consumes counters 2k and 2k+1.
  double normal(std::uint64_t counter) const {
    double u1 = uniform(2 * counter);
    double u2 = uniform(2 * counter + 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::uint64_t seed_;
};

}  // namespace axim
