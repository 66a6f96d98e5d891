#pragma once

#include "nlreduce/linalg/matrix.hpp"
#include "nlreduce/linalg/vector.hpp"

namespace nlreduce::linalg {

struct SymEigen {
  Vector values;   ///< ascending
  Matrix vectors;  ///< column i pairs with values[i]; orthogonal
  int sweeps = 0;
};

/// Cyclic Jacobi eigensolver. Throws NonConvergence when `max_sweeps`
/// sweeps do not reduce the off-diagonal mass below roundoff.
SymEigen sym_eigen(const SymMatrix& m, int max_sweeps = 100);

/// lambda_max / lambda_min; throws NotSPD if lambda_min <= 0.
double condition_number(const SymMatrix& m);

/// True iff a Cholesky factorization completes with all pivots > 0.
bool spd_check(const SymMatrix& m);

/// Dense Cholesky factorization m = L L^T.
class Cholesky {
 public:
  /// Throws NotSPD on a non-positive pivot.
  explicit Cholesky(const SymMatrix& m);

  std::size_t order() const { return l_.rows(); }
  const Matrix& factor() const { return l_; }

  Vector solve(const Vector& b) const;
  /// Solves column by column.
  Matrix solve(const Matrix& b) const;

 private:
  Matrix l_;
};

}  // namespace nlreduce::linalg
