#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace semaopt {

/// SplitMix64 finalizer; used to derive well-separated stream seeds from
/// (base seed, stream index) pairs.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Seeded random stream. The engine is std::mt19937_64 (fully specified by
/// the standard); the uniform/normal/index transforms are explicit here so a
/// given seed yields the same draw sequence on every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(mix64(seed)) {}

  /// Independent stream for (seed, stream); streams with distinct indices
  /// never collide in practice.
  static Rng substream(std::uint64_t seed, std::uint64_t stream) {
    return Rng(mix64(seed) ^ mix64(~stream));
  }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller; the second value of each pair is cached.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

  /// Uniform integer in [0, n), n >= 1. Multiply-shift bounded draw.
  std::uint64_t uniform_index(std::uint64_t n) {
    const unsigned __int128 wide = static_cast<unsigned __int128>(eng_()) * n;
    return static_cast<std::uint64_t>(wide >> 64);
  }

  std::uint64_t raw() { return eng_(); }

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace semaopt
