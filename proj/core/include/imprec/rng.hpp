#pragma once

#include <cstdint>

#include "imprec/normal.hpp"

namespace imprec {

/// Counter-based random source: every draw is a pure function of
/// (seed, stream, counter), so results do not depend on evaluation order,
/// chunking or thread count. Mixing is the splitmix64 finalizer over a
/// stream-salted state.
class CounterRng {
public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t bits(std::uint64_t stream, std::uint64_t counter) const {
    std::uint64_t z = seed_;
    z ^= mix(stream + 0x9E3779B97F4A7C15ULL);
    z += counter * 0x9E3779B97F4A7C15ULL + 0xBF58476D1CE4E5B9ULL;
    return mix(z);
  }

  /// Uniform double in the open interval (0, 1).
  double uniform(std::uint64_t stream, std::uint64_t counter) const {
    return (static_cast<double>(bits(stream, counter) >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Standard normal via the inverse CDF, one counter per draw.
  double normal(std::uint64_t stream, std::uint64_t counter) const {
    return normal_quantile(uniform(stream, counter));
  }

  /// Index into a cumulative-mass table: first k with u < cum[k].
  template <class Cum>
  std::size_t categorical(std::uint64_t stream, std::uint64_t counter,
                          const Cum& cumulative) const {
    double u = uniform(stream, counter);
    std::size_t k = 0;
    while (k + 1 < cumulative.size() && u >= cumulative[k]) ++k;
    return k;
  }

private:
  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t seed_;
};

}  // namespace imprec
