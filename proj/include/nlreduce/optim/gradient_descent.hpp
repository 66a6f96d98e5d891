#pragma once

#include "nlreduce/linalg/linop.hpp"
#include "nlreduce/optim/line_search.hpp"
#include "nlreduce/optim/record.hpp"
#include "nlreduce/problems/objective.hpp"

namespace nlreduce::optim {

enum class StepMode {
  optimal_quadratic,  ///< t = g^T g / g^T H g, exact for quadratics
  armijo,
};

struct GdOptions {
  StopRule stop;
  StepMode step = StepMode::armijo;
  ArmijoParams armijo;
  bool store_iterates = false;
  IterationCallback on_iteration;
};

struct OptimResult {
  Vector x;
  ConvergenceRecord record;
};

/// (g^T g) / (g^T H g). Throws DegenerateCurvature if g^T H g <= 0 and
/// std::invalid_argument for g = 0.
double optimal_step_quadratic(const Vector& g, const linalg::LinOp& hvp);

/// Gradient descent x <- x - t grad f(x) until ||g_k|| <= rel_grad_tol ||g_0||.
///
/// Applied to an ObjectiveFunction this is plain GD; applied to a
/// ReducedObjective it is right-preconditioned GD. The optimal step needs
/// f.hessian_op(). Throws MaxIterReached with the record when max_iter
/// steps do not meet the tolerance; line-search failures propagate.
OptimResult gradient_descent(problems::SmoothFunction& f, const Vector& x0, const GdOptions& opts);

}  // namespace nlreduce::optim
