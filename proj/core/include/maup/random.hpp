#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace maup {

/// SplitMix64 finalizer; used to derive independent per-stage seeds.
constexpr std::uint64_t mix_seed(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Named RNG streams. Each stage draws from its own stream so toggling one
/// prompting path never shifts the draws of another.
enum class Stream : std::uint64_t {
  partition = 1,
  mean_kmeans = 2,
  uncertainty_picks = 3,
  negative_kmeans = 4,
  phantom = 5,
};

constexpr std::uint64_t derive_seed(std::uint64_t seed, Stream stream) noexcept {
  return mix_seed(seed ^ mix_seed(static_cast<std::uint64_t>(stream)));
}

/// Portable random source. std::mt19937_64 output is fixed by the standard;
/// the distributions below are written out so results do not depend on the
/// standard library implementation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, n). n must be > 0.
  std::uint64_t uniform_index(std::uint64_t n) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t r = engine_();
    while (r >= limit) r = engine_();
    return r % n;
  }

  /// Uniform real in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Standard normal deviate (Box-Muller, one value per call).
  double normal() {
    double u1 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace maup
