#include "nlreduce/elimination/exact.hpp"

#include "nlreduce/error.hpp"

namespace nlreduce::elimination {

QuadraticExactElimination::QuadraticExactElimination(const problems::QuadraticProblem& problem,
                                                     problems::BlockPartition part, double cg_rel_tol)
    : part_(std::move(part)), blocks_(problem.blocks(part_)), cg_rel_tol_(cg_rel_tol) {
  warm_ = Vector(part_.n_y());
}

Elimination QuadraticExactElimination::eliminate(const Vector& x) {
  linalg::require_size(x, part_.n_x(), "QuadraticExactElimination x");
  const Vector rhs = blocks_.b2 - blocks_.a21 * x;
  const linalg::LinOp a22 = linalg::LinOp::view(blocks_.a22);
  linalg::CgResult cg = linalg::cg_solve(a22, rhs, warm_, cg_rel_tol_,
                                         linalg::default_cg_max_iter(part_.n_y()));
  ++work_.h_evaluations;
  ++work_.linear_solves;
  work_.cg_iterations += cg.iterations;
  last_tolerance_ = cg_rel_tol_ * linalg::norm2(rhs);
  warm_ = cg.x;
  return Elimination{std::move(cg.x), 0, 1, cg.residual_norm};
}

}  // namespace nlreduce::elimination
