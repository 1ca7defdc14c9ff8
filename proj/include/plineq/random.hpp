#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace plineq {

/// splitmix64 finalizer; used to derive independent stream seeds.
constexpr std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return mix_seed(seed ^ mix_seed(stream + 0x632be59bd9b4e019ULL));
}

/// Number of fractional bits kept by `quantize`. Values on this grid are
/// exactly representable as doubles, so float and rational runs see the
/// same inputs.
inline constexpr int kDyadicBits = 20;

inline double quantize(double x, int bits = kDyadicBits) {
  return std::ldexp(std::nearbyint(std::ldexp(x, bits)), -bits);
}

/// Seeded source of dyadic draws. Built on mt19937_64, whose output
/// sequence is fixed by the standard, and does its own conversion to
/// reals, so draws are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1p-53; }

  /// Uniform on [lo, hi], rounded to the dyadic grid.
  double dyadic(double lo, double hi) { return quantize(lo + (hi - lo) * uniform01()); }

  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) { return next() % n; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace plineq
