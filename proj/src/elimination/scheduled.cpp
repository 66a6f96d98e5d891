#include "nlreduce/elimination/scheduled.hpp"

#include <algorithm>
#include <stdexcept>

namespace nlreduce::elimination {

ScheduledInexactElimination::ScheduledInexactElimination(InnerSolver& inner, Vector y0,
                                                         ScheduleOptions opts)
    : inner_(inner), opts_(opts), tol_(std::max(opts.initial_tol, opts.floor)) {
  if (!(opts_.initial_tol > 0.0)) throw std::invalid_argument("ScheduledInexactElimination: initial_tol must be > 0");
  if (!(opts_.rho > 0.0 && opts_.rho < 1.0)) throw std::invalid_argument("ScheduledInexactElimination: rho must be in (0,1)");
  if (!(opts_.floor >= 0.0)) throw std::invalid_argument("ScheduledInexactElimination: floor must be >= 0");
  warm_ = std::move(y0);
}

Elimination ScheduledInexactElimination::eliminate(const Vector& x) {
  const WorkStats before = inner_.work();
  Elimination e = inner_.solve(x, warm_, tol_);
  const WorkStats& after = inner_.work();
  work_.linear_solves += after.linear_solves - before.linear_solves;
  work_.inner_iterations += after.inner_iterations - before.inner_iterations;
  work_.cg_iterations += after.cg_iterations - before.cg_iterations;
  ++work_.h_evaluations;
  return e;
}

void ScheduledInexactElimination::accept(const Vector& y) {
  linalg::require_size(y, warm_.size(), "ScheduledInexactElimination::accept");
  warm_ = y;
  tol_ = std::max(opts_.floor, opts_.rho * tol_);
}

void ScheduledInexactElimination::set_floor(double floor) {
  if (!(floor >= 0.0)) throw std::invalid_argument("ScheduledInexactElimination: floor must be >= 0");
  opts_.floor = floor;
  tol_ = std::max(tol_, floor);
}

void ScheduledInexactElimination::tighten_to(double tol) {
  tol_ = std::max(opts_.floor, std::min(tol_, tol));
}

}  // namespace nlreduce::elimination
