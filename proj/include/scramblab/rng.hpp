#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace scramblab {

// SplitMix64 used as a counter-based generator: every draw advances the
// internal counter by the 64-bit golden gamma and returns a finalized mix
// of it. Streams are cheap: stream k of a base seed starts at seed ^ k,
// so parallel workers can draw from disjoint sequences without locking.
//
// All derived distributions (uniform, gaussian) are implemented here
// rather than via <random>, because libstdc++/libc++ distributions are
// not bit-identical across platforms and every sampler in this project
// must be reproducible from (seed, stream) alone.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  static Rng stream(std::uint64_t seed, std::uint64_t k) { return Rng(seed ^ k); }

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform in (0, 1]; never returns 0 so log() is safe.
  double next_unit() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  // Uniform integer in [0, n), n >= 1. Multiply-shift; the bias of
  // O(n / 2^64) is irrelevant at the ranges used here.
  std::uint64_t next_below(std::uint64_t n) {
    const auto wide = static_cast<unsigned __int128>(next_u64()) * n;
    return static_cast<std::uint64_t>(wide >> 64);
  }

  // Standard normal via Box-Muller, one cached spare.
  double next_gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(next_unit()));
    const double a = 6.28318530717958647692 * next_unit();
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  // Standard complex normal, E|z|^2 = 1.
  std::complex<double> next_complex_gaussian() {
    const double re = next_gaussian();
    const double im = next_gaussian();
    return {re * 0.70710678118654752440, im * 0.70710678118654752440};
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace scramblab
