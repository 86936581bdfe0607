#pragma once

#include <cstdint>
#include <random>

namespace geoforest {

// Stateless 64-bit mixer used wherever a derived seed is needed.
uint64_t splitmix64(uint64_t x);

// Child-stream seed for (master, index). Used for per-tree forest streams and
// per-run experiment streams, so parallel and serial execution agree.
uint64_t derive_seed(uint64_t master, uint64_t index);

// Seedable generator with hand-rolled distributions. std::mt19937_64 output
// is specified bit-for-bit by the standard, but std::*_distribution is not,
// so every draw below is implemented directly on top of the raw stream.
// Each call consumes a deterministic (data-independent for uniform/normal)
// number of engine outputs; gamma uses rejection and consumes a
// data-dependent but seed-reproducible count.
class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}

  uint64_t raw() { return eng_(); }

  // Uniform on [0, 1), 53-bit resolution.
  double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Unbiased integer in [0, n).
  uint64_t uniform_int(uint64_t n);

  // Standard normal via Box-Muller (two uniforms per call, no caching).
  double normal();

  // Gamma(shape, 1) via Marsaglia-Tsang, boosted for shape < 1.
  double gamma(double shape);

  // Chi distribution with dof degrees of freedom: sqrt of a chi-squared draw.
  double chi(double dof);

 private:
  std::mt19937_64 eng_;
};

}  // namespace geoforest
