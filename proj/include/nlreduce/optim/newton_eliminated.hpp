#pragma once

#include "nlreduce/elimination/map.hpp"
#include "nlreduce/linalg/cg.hpp"
#include "nlreduce/optim/gradient_descent.hpp"
#include "nlreduce/problems/objective.hpp"

namespace nlreduce::optim {

struct NewtonElimOptions {
  StopRule stop;
  ArmijoParams armijo;  ///< t0 = 1 tries the full Newton step first
  double cg_rel_tol = 1e-10;  ///< outer system JF delta = -g
  double hessian_cg_rel_tol = linalg::kExactSolveTol;  ///< H_yy solves inside JF
  bool store_iterates = false;
  IterationCallback on_iteration;
};

/// Newton's method on the reduced objective x -> J(x, h(x)).
///
/// Each step solves JF(x) delta = -grad_x J(x, h(x)) by CG, with JF applied
/// matrix-free (one H_yy solve per application), then backtracks along delta.
/// Throws DegenerateCurvature when delta is not a descent direction and
/// MaxIterReached on budget exhaustion; CG and line-search errors propagate.
OptimResult newton_eliminated(const problems::Objective& obj, const problems::BlockPartition& part,
                              elimination::EliminationMap& elim, const Vector& x0,
                              const NewtonElimOptions& opts);

}  // namespace nlreduce::optim
