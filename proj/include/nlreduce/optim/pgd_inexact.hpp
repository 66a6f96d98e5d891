#pragma once

#include "nlreduce/elimination/scheduled.hpp"
#include "nlreduce/optim/gradient_descent.hpp"
#include "nlreduce/problems/objective.hpp"

namespace nlreduce::optim {

struct InexactPgdOptions {
  StopRule stop;
  ArmijoParams armijo;
  /// Tolerance floor as a fraction of the absolute outer tolerance
  /// rel_grad_tol * ||g_0||.
  double floor_fraction = 1e-2;
  bool store_iterates = false;
  IterationCallback on_iteration;
};

struct InexactPgdResult {
  Vector x;
  Vector y;
  double y_residual = 0.0;  ///< ||grad_y J(x, y)|| at the returned pair
  ConvergenceRecord record;
};

/// Right-preconditioned GD with inexact elimination.
///
/// Each outer step takes an Armijo step along -grad_x J(x, h_N(x; y0)),
/// where every trial point re-evaluates h_N at the current tolerance from
/// the committed warm start. On acceptance y0 moves to the accepted y and
/// the tolerance shrinks by rho (bounded below by the floor).
///
/// Converged when ||grad_x J|| <= rel_grad_tol ||g_0|| and the returned
/// pair also satisfies ||grad_y J|| <= the same absolute threshold. When only
/// the x-part is met, the tolerance is tightened to that threshold and h is
/// re-evaluated at the same x (no outer iteration is counted).
///
/// `elim` must have been built with `part` over `obj`; its warm start is
/// reset to y0.
InexactPgdResult pgd_inexact(const problems::Objective& obj, const problems::BlockPartition& part,
                             elimination::ScheduledInexactElimination& elim, const Vector& x0,
                             const Vector& y0, const InexactPgdOptions& opts);

}  // namespace nlreduce::optim
