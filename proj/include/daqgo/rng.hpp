#pragma once

#include <cstdint>

namespace daqgo {

// Deterministic PRNG with a fixed cross-platform bit stream: xoshiro256++
// seeded through splitmix64.  Normal deviates come from Box-Muller on
// explicitly constructed 53-bit uniforms, so every draw sequence is
// reproducible from (seed) alone regardless of standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();

  // Uniform on [0, 1), 53 bits of mantissa.
  double uniform();

  // N(mean, stddev^2).  Box-Muller pairs; the second member of each pair is
  // cached, so draw order matters for reproducibility.
  double normal(double mean = 0.0, double stddev = 1.0);

  // Uniform on {0, 1, ..., bound-1} by rejection; bound must be positive.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::uint64_t s_[4];
  double cached_ = 0.0;
  bool has_cached_ = false;
};

// Stream k derived from a base seed.  Distinct k give statistically
// independent streams; derive_seed(base, 0) != base in general.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t k);

}  // namespace daqgo
