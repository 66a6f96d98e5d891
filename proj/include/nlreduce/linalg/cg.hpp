#pragma once

#include "nlreduce/linalg/linop.hpp"
#include "nlreduce/linalg/vector.hpp"

namespace nlreduce::linalg {

/// Relative tolerance used for linear solves that stand in for exact ones.
inline constexpr double kExactSolveTol = 1e-12;

struct CgResult {
  Vector x;
  int iterations = 0;
  double residual_norm = 0.0;  ///< ||op(x) - rhs||_2, recomputed explicitly
};

/// Conjugate gradients for an SPD operator.
///
/// Stops once ||op(x) - rhs|| <= rel_tol * ||rhs||. The recursively updated
/// residual is confirmed against the explicit one before returning; if they
/// disagree the iteration restarts from the explicit residual. A zero
/// right-hand side returns the zero vector after 0 iterations.
/// Throws NonConvergence (carrying the final residual) after max_iter.
CgResult cg_solve(const LinOp& op, const Vector& rhs, const Vector& x0, double rel_tol,
                  int max_iter);

/// Iteration budget used when callers have no better estimate.
int default_cg_max_iter(std::size_t dim);

}  // namespace nlreduce::linalg
