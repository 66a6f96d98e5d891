#pragma once

#include "nlreduce/elimination/map.hpp"
#include "nlreduce/linalg/cg.hpp"
#include "nlreduce/problems/quadratic.hpp"

namespace nlreduce::elimination {

/// Static condensation for a quadratic: h(x) solves A22 y = b2 - A21 x.
///
/// S is never assembled; every evaluation is one matrix-free CG solve with
/// A22, warm-started from the previous y.
class QuadraticExactElimination final : public EliminationMap {
 public:
  QuadraticExactElimination(const problems::QuadraticProblem& problem, problems::BlockPartition part,
                            double cg_rel_tol = linalg::kExactSolveTol);

  /// Counts exactly one linear solve.
  Elimination eliminate(const Vector& x) override;
  /// Absolute residual bound of the last solve, cg_rel_tol * ||b2 - A21 x||.
  double tolerance() const override { return last_tolerance_; }

  double cg_rel_tol() const { return cg_rel_tol_; }
  const problems::BlockPartition& partition() const { return part_; }
  const problems::QuadraticBlocks& blocks() const { return blocks_; }

 private:
  problems::BlockPartition part_;
  problems::QuadraticBlocks blocks_;
  double cg_rel_tol_;
  double last_tolerance_ = 0.0;
};

}  // namespace nlreduce::elimination
