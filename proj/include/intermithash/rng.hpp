#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

namespace intermithash {

/// SplitMix64 (Steele, Lea, Flood 2014). Chosen over the <random> engines
/// because its output, and every derived variate below, is specified
/// bit-for-bit here rather than by the standard library vendor.
///
/// Streams are split by hashing (seed, index) through the same finalizer, so
/// `Rng::split(seed, i)` gives a reproducible, independent-looking stream for
/// trial or sample `i` no matter which thread consumes it.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  static Rng split(std::uint64_t seed, std::uint64_t index) {
    return Rng(mix(seed ^ mix(index + 0x9e3779b97f4a7c15ULL)));
  }

  result_type operator()() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix(state_);
  }

  /// Uniform in [0, 1) with 53 bits of resolution.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound) by multiply-shift; bias is below 2^-64 * bound.
  std::uint64_t below(std::uint64_t bound) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>((*this)()) * bound) >> 64);
  }

  /// Standard normal via Box-Muller (one variate per call, no caching).
  double normal() {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  void fill(std::uint8_t* out, std::size_t n) {
    while (n >= 8) {
      std::uint64_t v = (*this)();
      for (int i = 0; i < 8; ++i) out[i] = static_cast<std::uint8_t>(v >> (8 * i));
      out += 8;
      n -= 8;
    }
    if (n > 0) {
      std::uint64_t v = (*this)();
      for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<std::uint8_t>(v >> (8 * i));
    }
  }

 private:
  std::uint64_t state_;
};

}  // namespace intermithash
