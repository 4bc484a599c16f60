#pragma once

// Counter-based 64-bit generator (splitmix64 finalizer over seed/stream/
// counter). Stateless per draw, so Monte-Carlo blocks keyed by (seed, stream)
// reproduce bitwise regardless of evaluation order or thread count.

#include <cmath>
#include <cstdint>

namespace pcone {

class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : base_(mix(seed ^ mix(stream * 0xA0761D6478BD642FULL))) {}

  std::uint64_t next_u64() {
    return mix(base_ ^ (counter_++ * 0x9E3779B97F4A7C15ULL));
  }

  // uniform in [0,1)
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // uniform in (0,1]
  double uniform_pos() { return 1.0 - uniform(); }

  double normal() {
    // Box-Muller, one value per pair of draws
    const double u1 = uniform_pos();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(6.283185307179586476925286766559 * u2);
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t base_;
  std::uint64_t counter_ = 0;
};

}  // namespace pcone
