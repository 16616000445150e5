#pragma once

#include <cstdint>
#include <vector>

#include "qspa/complex_matrix.hpp"

namespace qspa {

/// Repo-wide random number generator: SplitMix64 (Steele/Lea/Flood).
/// Fixed here so fixture sequences are reproducible from a seed across
/// implementations. Derived quantities are pinned too:
///   - uniform01():   (next_u64() >> 11) * 2^-53               in [0, 1)
///   - gaussian():    Box-Muller from u1 in (0,1], u2 in [0,1),
///                    z = sqrt(-2 ln u1) * cos(2 pi u2); one pair of
///                    u64 draws per call, the sine branch is discarded
///   - complex_gaussian(): both Box-Muller branches of one pair,
///                    real and imaginary parts each N(0,1)
///   - split(k):      child generator seeded from the scrambled parent
///                    state and stream index k; does not advance the parent
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double gaussian();
  Complex complex_gaussian();

  SplitMix64 split(std::uint64_t stream) const;

  /// Index sampled from the (approximately normalized) weight vector;
  /// rounding leftovers fall into the last bucket.
  std::size_t categorical(const std::vector<double>& probs);

 private:
  std::uint64_t state_;
};

}  // namespace qspa
