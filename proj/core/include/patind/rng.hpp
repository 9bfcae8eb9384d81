#pragma once

#include <cmath>
#include <cstdint>

namespace patind {

// SplitMix64 generator (Steele, Lea, Flood 2014).  One 64-bit word of state,
// so a replication stream can be derived from (master seed, stream index)
// without touching any other stream.  All Monte Carlo code in this library
// draws from these streams only; results are reproducible bit-for-bit for a
// fixed seed, independent of thread count.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) : state_(seed) {}

  // Stream `index` of a master seed.  Mixing the pair through the SplitMix
  // finalizer decorrelates neighbouring indices.
  static Rng stream(std::uint64_t master_seed, std::uint64_t index) {
    return Rng(mix(master_seed + 0x9e3779b97f4a7c15ULL * (index + 1)));
  }

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix(state_);
  }

  static constexpr std::uint64_t min() { return 0; }
  static constexpr std::uint64_t max() { return ~0ULL; }
  std::uint64_t operator()() { return next(); }

  // Uniform on [0,1), 53 random mantissa bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform on (0,1); safe as a log() argument.
  double uniform_pos() {
    return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Unbiased integer in [0, bound) by rejection.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  // Standard normal via the Marsaglia polar method; the spare value is
  // cached, so draws come in deterministic order per stream.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    have_spare_ = true;
    return u * f;
  }

  // Exponential(1).
  double exponential() { return -std::log(uniform_pos()); }

  // Gamma(shape, scale=1) for shape >= 1, Marsaglia-Tsang squeeze method.
  double gamma(double shape) {
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x, v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = uniform_pos();
      const double x2 = x * x;
      if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
      if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

  // Central chi-square with m degrees of freedom.
  double chi_square(int m) {
    if (m == 1) {
      const double z = normal();
      return z * z;
    }
    if (m == 2) return 2.0 * exponential();
    return 2.0 * gamma(0.5 * m);
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace patind
