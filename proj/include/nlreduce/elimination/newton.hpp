#pragma once

#include <optional>

#include "nlreduce/elimination/map.hpp"
#include "nlreduce/problems/objective.hpp"

namespace nlreduce::elimination {

using problems::BlockPartition;
using problems::Objective;

struct NewtonOptions {
  double inner_tol = 1e-10;  ///< absolute tolerance on ||grad_y J||
  int max_inner = 100;
  /// CG relative tolerance for the Newton systems. Unset: forcing term
  /// min(0.5, sqrt(||grad_y J||)).
  std::optional<double> cg_rel_tol;
  int cg_max_iter = 0;  ///< 0: default_cg_max_iter(n_y)
  double merit_c1 = 1e-4;
  double merit_shrink = 0.5;
  int max_backtracks = 50;
};

/// Inexact Newton solver for grad_y J(x, y) = 0 with x fixed.
///
/// Each step solves grad_yy J(x, y) d = -grad_y J(x, y) by CG and is damped
/// by backtracking on the merit ||grad_y J||^2.
class NewtonElimination final : public InnerSolver {
 public:
  /// `obj` must outlive the solver.
  NewtonElimination(const Objective& obj, BlockPartition part, NewtonOptions opts = {});

  /// Throws NonConvergence (with the best residual) after max_inner steps.
  Elimination solve(const Vector& x, const Vector& y0, double tol) override;
  /// solve() at the configured inner_tol.
  Elimination solve(const Vector& x, const Vector& y0) { return solve(x, y0, opts_.inner_tol); }

  const NewtonOptions& options() const { return opts_; }
  const BlockPartition& partition() const { return part_; }

 private:
  const Objective& obj_;
  BlockPartition part_;
  NewtonOptions opts_;
};

struct GradientStepsOptions {
  int steps = 10;  ///< N
  double c1 = 1e-4;
  double shrink = 0.5;
  double t0 = 1.0;
  int max_trials = 60;
};

/// N steps of gradient descent on y -> J(x, y) with Armijo steps (stops
/// early once ||grad_y J|| <= tol). Kept for comparison with Newton.
class GradientStepsElimination final : public InnerSolver {
 public:
  GradientStepsElimination(const Objective& obj, BlockPartition part, GradientStepsOptions opts = {});

  Elimination solve(const Vector& x, const Vector& y0, double tol) override;

 private:
  const Objective& obj_;
  BlockPartition part_;
  GradientStepsOptions opts_;
};

/// h evaluated by an inner solver at a fixed tolerance. The warm start is
/// moved to every returned y.
class FixedToleranceElimination final : public EliminationMap {
 public:
  /// `inner` must outlive the map.
  FixedToleranceElimination(InnerSolver& inner, double tol, Vector y0);

  Elimination eliminate(const Vector& x) override;
  double tolerance() const override { return tol_; }

 private:
  InnerSolver& inner_;
  double tol_;
};

}  // namespace nlreduce::elimination
