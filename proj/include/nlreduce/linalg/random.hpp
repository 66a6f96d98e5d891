#pragma once

#include <cstdint>
#include <random>

#include "nlreduce/linalg/matrix.hpp"

namespace nlreduce::linalg {

/// Seeded generator built on std::mt19937_64, whose output sequence is fixed
/// by the standard. Uniform and normal variates are derived here (53-bit
/// mantissa fill and Box-Muller) instead of through std::*_distribution,
/// whose algorithms are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on [0, 1).
  double uniform01();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  double normal();

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Orthonormalized (modified Gram-Schmidt, two passes) square matrix of
/// independent standard normal entries. Deterministic for a fixed seed.
Matrix random_orthogonal(std::size_t order, std::uint64_t seed);
Matrix random_orthogonal(std::size_t order, Rng& rng);

}  // namespace nlreduce::linalg
