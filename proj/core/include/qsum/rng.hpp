#pragma once

#include <cstdint>
#include <random>

namespace qsum {

/// Seeded 64-bit generator. Draws are bit-reproducible across platforms: the
/// engine is mt19937_64 and doubles are built from the top 53 bits directly
/// rather than through a standard distribution.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1).
  double uniform();

 private:
  std::mt19937_64 engine_;
};

}  // namespace qsum
