#pragma once

#include <optional>
#include <vector>

#include "nlreduce/elimination/map.hpp"
#include "nlreduce/linalg/eigen.hpp"
#include "nlreduce/optim/record.hpp"
#include "nlreduce/problems/quadratic.hpp"

namespace nlreduce::optim {

/// Exact block minimizer for a quadratic: solve(x, y0, tol) returns the
/// minimizer of y -> J(x, y), i.e. A22 y = b2 - A21 x, by a dense Cholesky
/// solve factored once. `tol` and `y0` are ignored apart from consistency
/// (y0 is returned untouched when it already meets `tol`).
///
/// Build it with part.swapped() to minimize over the x-block instead.
class QuadraticBlockSolver final : public elimination::InnerSolver {
 public:
  QuadraticBlockSolver(const problems::QuadraticProblem& problem, problems::BlockPartition part);

  elimination::Elimination solve(const Vector& x, const Vector& y0, double tol) override;

 private:
  problems::BlockPartition part_;
  problems::QuadraticBlocks blocks_;
  linalg::Cholesky chol_;
};

struct AltMinOptions {
  StopRule stop;
  /// Block subproblems are solved to sub_tol_fraction * rel_grad_tol ||g_0||.
  double sub_tol_fraction = 1e-2;
  bool store_iterates = false;
  IterationCallback on_iteration;
};

struct AltMinResult {
  Vector z;
  /// One row per full sweep; `step` holds ||z_{k+1} - z_k||, `grad_norm`
  /// the full gradient norm.
  ConvergenceRecord record;
  /// J after every half-sweep: J(z_0), J(x_1, y_0), J(x_1, y_1), ...
  std::vector<double> half_sweep_values;
};

/// Alternating minimization x_{k+1} = argmin_x J(x, y_k),
/// y_{k+1} = argmin_y J(x_{k+1}, y).
///
/// `x_solver` minimizes over x (built on part.swapped()), `y_solver` over y
/// (built on part). Stops when ||grad J(z_k)|| <= rel_grad_tol ||grad J(z_0)||.
/// Throws MaxIterReached; subsolver errors propagate.
AltMinResult alternating_minimization(const problems::Objective& obj,
                                      const problems::BlockPartition& part, const Vector& z0,
                                      elimination::InnerSolver& x_solver,
                                      elimination::InnerSolver& y_solver,
                                      const AltMinOptions& opts);

}  // namespace nlreduce::optim
