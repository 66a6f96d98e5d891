#pragma once

#include <cstdint>

#include "nlreduce/linalg/matrix.hpp"
#include "nlreduce/problems/objective.hpp"

namespace nlreduce::problems {

using linalg::Matrix;

/// Dense blocks of A and b under a partition.
struct QuadraticBlocks {
  SymMatrix a11;
  Matrix a12;  ///< n_x x n_y
  Matrix a21;  ///< n_y x n_x
  SymMatrix a22;
  Vector b1;
  Vector b2;
};

/// J(z) = 1/2 z^T A z - b^T z + c with A symmetric positive definite.
class QuadraticProblem final : public Objective {
 public:
  /// Throws NotSPD if A fails spd_check, DimensionMismatch on sizes.
  QuadraticProblem(SymMatrix a, Vector b, double c, BlockPartition partition);

  const SymMatrix& a() const { return a_; }
  const Vector& b() const { return b_; }
  double c() const { return c_; }
  const BlockPartition& partition() const { return partition_; }

  std::size_t dim() const override { return b_.size(); }
  double value(const Vector& z) const override;
  Vector gradient(const Vector& z) const override;
  std::pair<double, Vector> value_and_gradient(const Vector& z) const override;
  /// A v, through the same product used by gradient().
  Vector hvp(const Vector& z, const Vector& v) const override;
  /// Constant blocks of A, applied densely.
  BlockHessian block_hessian(const Vector& z, const BlockPartition& part) const override;

  QuadraticBlocks blocks(const BlockPartition& part) const;

 private:
  SymMatrix a_;
  Vector b_;
  double c_;
  BlockPartition partition_;
};

/// Spectrum interval for one diagonal block.
struct SpectrumRange {
  double lo;
  double hi;
};

struct TestMatrixSpec {
  std::size_t n_x = 40;
  std::size_t n_y = 60;
  SpectrumRange spec_x{1.0, 10.0};
  SpectrumRange spec_y{1.0, 1000.0};
  double coupling_eps = 1e-2;
  std::uint64_t seed = 1;
};

/// Random SPD test matrix with prescribed block spectra.
///
/// A11 = Q1 diag(spec_x) Q1^T and A22 = Q2 diag(spec_y) Q2^T with random
/// orthogonal Q1, Q2 and linearly equispaced spectra including both ends.
/// A12 = A21^T has entries uniform(-1,1) * eps and b entries uniform(-1,1);
/// c = 0. If A is not SPD, eps is halved and A12 redrawn (at most 60 times)
/// before throwing ConstructionFailure. y is the trailing n_y block.
QuadraticProblem build_test_matrix(const TestMatrixSpec& spec);

/// n points from hi down to lo, both included (n == 1 gives lo).
Vector equispaced(std::size_t n, SpectrumRange range);

}  // namespace nlreduce::problems
