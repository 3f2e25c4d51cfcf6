#pragma once

#include <cstdint>
#include <random>

namespace chebconvex {

/// mt19937_64 with hand-rolled value mappings. std::uniform_*_distribution
/// is implementation-defined, which would break the byte-identical-output
/// contract across standard libraries; the raw engine is fully specified.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  /// Uniform in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Uniform integer in [0, bound). Modulo bias is irrelevant at the sample
  /// counts used here, and determinism matters more than perfect uniformity.
  std::uint64_t below(std::uint64_t bound) { return bound == 0 ? 0 : eng_() % bound; }

  std::uint64_t raw() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

}  // namespace chebconvex
