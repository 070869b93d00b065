#pragma once

#include <cstdint>
#include <random>

namespace apsof {

// mt19937_64's output sequence is fixed by the standard. Conversions to
// doubles and bounded integers are done here rather than through
// <random> distributions, whose algorithms vary between library vendors.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, 1) with 53 bits of resolution.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x = next();
    while (x >= limit) x = next();
    return x % bound;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace apsof
