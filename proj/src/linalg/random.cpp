#include "nlreduce/linalg/random.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nlreduce::linalg {

double Rng::uniform01() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform01();
  while (u1 == 0.0) u1 = uniform01();
  const double u2 = uniform01();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

Matrix random_orthogonal(std::size_t order, std::uint64_t seed) {
  Rng rng(seed);
  return random_orthogonal(order, rng);
}

Matrix random_orthogonal(std::size_t order, Rng& rng) {
  if (order == 0) throw std::invalid_argument("random_orthogonal: order must be >= 1");
  const std::size_t n = order;
  Matrix q(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) q(i, j) = rng.normal();

  for (std::size_t j = 0; j < n; ++j) {
    Vector v = q.col(j);
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < j; ++k) {
        double proj = 0.0;
        for (std::size_t i = 0; i < n; ++i) proj += q(i, k) * v[i];
        for (std::size_t i = 0; i < n; ++i) v[i] -= proj * q(i, k);
      }
    }
    const double len = norm2(v);
    if (!(len > 0.0)) throw std::runtime_error("random_orthogonal: rank-deficient draw");
    v *= 1.0 / len;
    q.set_col(j, v);
  }
  return q;
}

}  // namespace nlreduce::linalg
