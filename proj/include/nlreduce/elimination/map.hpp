#pragma once

#include "nlreduce/linalg/vector.hpp"
#include "nlreduce/problems/objective.hpp"

namespace nlreduce::elimination {

using linalg::Vector;
using problems::WorkStats;

/// Outcome of one evaluation of an elimination map at x.
struct Elimination {
  Vector y;
  int inner_iterations = 0;
  int linear_solves = 0;
  double residual = 0.0;  ///< ||grad_y J(x, y)||_2
};

/// Realization of the implicit map h : x -> y with grad_y J(x, h(x)) = 0.
///
/// Maps carry a warm start y0 and work counters, so one instance belongs to
/// one optimizer run.
class EliminationMap {
 public:
  virtual ~EliminationMap() = default;

  virtual Elimination eliminate(const Vector& x) = 0;
  /// Tolerance on ||grad_y J|| the map currently works to (absolute).
  virtual double tolerance() const = 0;

  const Vector& warm_start() const { return warm_; }
  void set_warm_start(Vector y0) { warm_ = std::move(y0); }
  const WorkStats& work() const { return work_; }

 protected:
  Vector warm_;
  WorkStats work_;
};

/// Iterative solver for min_y J(x, y) started from a given y0.
///
/// Consistency: if ||grad_y J(x, y0)|| <= tol the solver returns y0 with zero
/// iterations.
class InnerSolver {
 public:
  virtual ~InnerSolver() = default;

  virtual Elimination solve(const Vector& x, const Vector& y0, double tol) = 0;
  const WorkStats& work() const { return work_; }

 protected:
  WorkStats work_;
};

}  // namespace nlreduce::elimination
