#include "qspa/rng.hpp"

#include <cmath>

namespace qspa {

namespace {

std::uint64_t scramble(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

constexpr double kTwoPi = 6.283185307179586476925286766559;

}  // namespace

double SplitMix64::gaussian() {
  const double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  const double u2 = uniform01();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

Complex SplitMix64::complex_gaussian() {
  const double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  const double u2 = uniform01();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  return Complex(radius * std::cos(kTwoPi * u2), radius * std::sin(kTwoPi * u2));
}

SplitMix64 SplitMix64::split(std::uint64_t stream) const {
  return SplitMix64(scramble(state_ + 0x9E3779B97F4A7C15ULL * (stream + 1)));
}

std::size_t SplitMix64::categorical(const std::vector<double>& probs) {
  const double u = uniform01();
  double acc = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    if (u < acc) return i;
  }
  return probs.empty() ? 0 : probs.size() - 1;
}

}  // namespace qspa
