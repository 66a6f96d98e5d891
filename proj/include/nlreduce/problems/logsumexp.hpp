#pragma once

#include "nlreduce/problems/objective.hpp"

namespace nlreduce::problems {

/// J(z) = log( sum_i a_i exp(b_i z_i) ) + 1/2 z^T D z with diagonal D.
///
/// Exponentials are evaluated with the max-shift m = max_i b_i z_i, so
/// J = m + log(sum_i a_i exp(b_i z_i - m)) + 1/2 z^T D z.
class LogSumExpProblem final : public Objective {
 public:
  /// Benchmark instance: a_i = i (1-based), b_i = 10 and d_i = 1e-4 on the
  /// first n_el coordinates, b_i = 1 and d_i = 1e-2 on the rest. The first
  /// n_el coordinates form the eliminated block.
  LogSumExpProblem(std::size_t n, std::size_t n_el);
  /// General coefficients. Requires a_i > 0 and d_i >= 0 (the problem is
  /// strongly convex only when every d_i > 0).
  LogSumExpProblem(Vector a, Vector b, Vector d, std::size_t n_el);

  std::size_t dim() const override { return a_.size(); }
  std::size_t n_el() const { return n_el_; }
  const Vector& a_coeffs() const { return a_; }
  const Vector& b_coeffs() const { return b_; }
  const Vector& d_diag() const { return d_; }

  /// Leading n_el coordinates eliminated; needs 1 <= n_el < n.
  BlockPartition partition() const;

  double value(const Vector& z) const override;
  Vector gradient(const Vector& z) const override;
  std::pair<double, Vector> value_and_gradient(const Vector& z) const override;
  /// diag(b^2 p) v - (b p)(b p)^T v + D v, with softmax weights p.
  Vector hvp(const Vector& z, const Vector& v) const override;

 private:
  struct Softmax {
    double shift;  // max_i b_i z_i
    double sum;    // sum_i a_i exp(b_i z_i - shift)
    Vector s;      // b_i z_i
  };
  Softmax softmax(const Vector& z) const;

  Vector a_;
  Vector b_;
  Vector d_;
  std::size_t n_el_;
};

}  // namespace nlreduce::problems
