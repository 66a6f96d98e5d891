#include "nlreduce/elimination/newton.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "nlreduce/error.hpp"
#include "nlreduce/linalg/cg.hpp"

namespace nlreduce::elimination {

NewtonElimination::NewtonElimination(const Objective& obj, BlockPartition part, NewtonOptions opts)
    : obj_(obj), part_(std::move(part)), opts_(opts) {
  if (part_.n() != obj_.dim()) throw DimensionMismatch("NewtonElimination: partition size");
  if (!(opts_.inner_tol > 0.0)) throw std::invalid_argument("NewtonElimination: inner_tol must be > 0");
  if (opts_.max_inner < 0) throw std::invalid_argument("NewtonElimination: max_inner must be >= 0");
}

Elimination NewtonElimination::solve(const Vector& x, const Vector& y0, double tol) {
  linalg::require_size(x, part_.n_x(), "NewtonElimination x");
  linalg::require_size(y0, part_.n_y(), "NewtonElimination y0");
  if (!(tol > 0.0)) throw std::invalid_argument("NewtonElimination: tolerance must be > 0");

  auto residual_at = [&](const Vector& y) { return obj_.grad_y(part_.join(x, y), part_); };
  const int cg_max = opts_.cg_max_iter > 0 ? opts_.cg_max_iter : linalg::default_cg_max_iter(part_.n_y());

  Elimination out{y0, 0, 0, 0.0};
  Vector r = residual_at(out.y);
  double res = linalg::norm2(r);
  double best = res;

  while (res > tol) {
    if (out.inner_iterations >= opts_.max_inner) {
      throw NonConvergence("NewtonElimination: residual " + std::to_string(best) + " > tolerance " +
                               std::to_string(tol) + " after " + std::to_string(out.inner_iterations) +
                               " steps",
                           best, out.inner_iterations);
    }
    const problems::BlockHessian h = obj_.block_hessian(part_.join(x, out.y), part_);
    const double eta = opts_.cg_rel_tol ? *opts_.cg_rel_tol : std::min(0.5, std::sqrt(res));
    const linalg::CgResult step = linalg::cg_solve(h.yy, -r, Vector(part_.n_y()), eta, cg_max);
    ++out.linear_solves;
    ++work_.linear_solves;
    work_.cg_iterations += step.iterations;

    const double phi0 = res * res;
    double t = 1.0;
    bool accepted = false;
    Vector y_trial;
    Vector r_trial;
    for (int k = 0; k <= opts_.max_backtracks; ++k, t *= opts_.merit_shrink) {
      y_trial = out.y;
      linalg::axpy(t, step.x, y_trial);
      r_trial = residual_at(y_trial);
      const double phi = linalg::dot(r_trial, r_trial);
      if (phi <= (1.0 - 2.0 * opts_.merit_c1 * t) * phi0) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      throw NonConvergence("NewtonElimination: no sufficient decrease of ||grad_y J||^2", best,
                           out.inner_iterations);
    }
    out.y = std::move(y_trial);
    r = std::move(r_trial);
    res = linalg::norm2(r);
    best = std::min(best, res);
    ++out.inner_iterations;
    ++work_.inner_iterations;
  }
  out.residual = res;
  return out;
}

GradientStepsElimination::GradientStepsElimination(const Objective& obj, BlockPartition part,
                                                   GradientStepsOptions opts)
    : obj_(obj), part_(std::move(part)), opts_(opts) {
  if (part_.n() != obj_.dim()) throw DimensionMismatch("GradientStepsElimination: partition size");
  if (opts_.steps < 0) throw std::invalid_argument("GradientStepsElimination: steps must be >= 0");
}

Elimination GradientStepsElimination::solve(const Vector& x, const Vector& y0, double tol) {
  linalg::require_size(x, part_.n_x(), "GradientStepsElimination x");
  linalg::require_size(y0, part_.n_y(), "GradientStepsElimination y0");

  Elimination out{y0, 0, 0, 0.0};
  auto [f, grad] = obj_.value_and_gradient(part_.join(x, out.y));
  Vector g = part_.gather_y(grad);
  double res = linalg::norm2(g);

  for (int step = 0; step < opts_.steps && res > tol; ++step) {
    double t = opts_.t0;
    bool accepted = false;
    for (int k = 0; k < opts_.max_trials; ++k, t *= opts_.shrink) {
      Vector y_trial = out.y;
      linalg::axpy(-t, g, y_trial);
      auto [f_trial, grad_trial] = obj_.value_and_gradient(part_.join(x, y_trial));
      if (f_trial <= f - opts_.c1 * t * res * res) {
        out.y = std::move(y_trial);
        f = f_trial;
        g = part_.gather_y(grad_trial);
        res = linalg::norm2(g);
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
    ++out.inner_iterations;
    ++work_.inner_iterations;
  }
  out.residual = res;
  return out;
}

FixedToleranceElimination::FixedToleranceElimination(InnerSolver& inner, double tol, Vector y0)
    : inner_(inner), tol_(tol) {
  if (!(tol_ > 0.0)) throw std::invalid_argument("FixedToleranceElimination: tolerance must be > 0");
  warm_ = std::move(y0);
}

Elimination FixedToleranceElimination::eliminate(const Vector& x) {
  const WorkStats before = inner_.work();
  Elimination e = inner_.solve(x, warm_, tol_);
  const WorkStats& after = inner_.work();
  work_.linear_solves += after.linear_solves - before.linear_solves;
  work_.inner_iterations += after.inner_iterations - before.inner_iterations;
  work_.cg_iterations += after.cg_iterations - before.cg_iterations;
  ++work_.h_evaluations;
  warm_ = e.y;
  return e;
}

}  // namespace nlreduce::elimination
