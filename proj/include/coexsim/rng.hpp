#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>

namespace coexsim {

/// Counter-based random stream. A stream is keyed by an arbitrary tuple of
/// 64-bit words; two streams with distinct keys are statistically independent,
/// so draws can be reproduced (and parallelized) from the key alone without
/// any shared generator state.
class counter_rng {
public:
  counter_rng() = default;

  explicit counter_rng(std::initializer_list<std::uint64_t> key) {
    std::uint64_t s = 0x243f6a8885a308d3ull;
    for (std::uint64_t w : key) {
      s = mix(s + golden + w);
    }
    state_ = s;
  }

  std::uint64_t next_u64() { return mix(state_ + (++counter_) * golden); }

  /// Uniform in [0, 1).
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform in (0, 1] (safe as a log() argument).
  double next_double_open() { return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53; }

  /// Standard normal via Box-Muller; the spare value is cached.
  double next_normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = next_double_open();
    const double u2 = next_double();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * pi * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

  /// Circularly symmetric complex normal with total variance `var`.
  std::complex<double> next_cnormal(double var) {
    const double s = std::sqrt(var * 0.5);
    return {s * next_normal(), s * next_normal()};
  }

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

private:
  static constexpr std::uint64_t golden = 0x9e3779b97f4a7c15ull;
  static constexpr double pi = 3.141592653589793238462643383279502884;

  std::uint64_t state_ = 0;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

} // namespace coexsim
