#pragma once

#include <optional>

#include "nlreduce/elimination/map.hpp"
#include "nlreduce/linalg/cg.hpp"
#include "nlreduce/problems/objective.hpp"
#include "nlreduce/problems/quadratic.hpp"

namespace nlreduce::elimination {

using problems::BlockPartition;
using problems::Objective;

/// Matrix-free JF(x) = H_xx - H_xy H_yy^{-1} H_yx at z = (x, y), the
/// Hessian of the reduced objective when y = h(x). Every application runs
/// one CG solve with H_yy at `cg_rel_tol`; it is added to `counter` when
/// given (which must outlive the operator).
linalg::LinOp reduced_hessian_op(const Objective& obj, const BlockPartition& part, const Vector& z,
                                 double cg_rel_tol = linalg::kExactSolveTol,
                                 WorkStats* counter = nullptr);

/// S v = A11 v - A12 A22^{-1} A21 v with one A22 CG solve.
Vector reduced_hvp_quadratic(const problems::QuadraticProblem& problem, const BlockPartition& part,
                             const Vector& v, double cg_rel_tol = linalg::kExactSolveTol);

/// Reduced cost x -> J(x, h(x)) for a given elimination map.
///
/// The gradient reported is grad_x J(x, h(x)). For an exact map that is the
/// gradient of the reduced cost (the grad_y term vanishes); for an inexact
/// map it is the inexact descent direction.
///
/// The last evaluated (x, y, value, gradient) is cached, so value and
/// gradient requests at the same x share one evaluation of h.
class ReducedObjective final : public problems::SmoothFunction {
 public:
  /// `obj` and `map` must outlive the reduced objective.
  ReducedObjective(const Objective& obj, BlockPartition part, EliminationMap& map);

  std::size_t dim() const override { return part_.n_x(); }
  double value(const Vector& x) override;
  Vector gradient(const Vector& x) override;
  std::pair<double, Vector> value_and_gradient(const Vector& x) override;
  /// Matrix-free JF at (x, h(x)).
  std::optional<linalg::LinOp> hessian_op(const Vector& x) override;
  /// Map work plus the solves spent in Hessian applications.
  WorkStats work() const override;

  /// Elimination result at the cached point; requires a prior evaluation.
  const Elimination& last_elimination() const;
  const Vector& last_x() const;
  /// Number of evaluations that asked the map for a fresh h.
  long fresh_h_requests() const { return fresh_h_; }
  /// Drops the cache, e.g. after the map's tolerance changed.
  void invalidate() { cache_.reset(); }

  const BlockPartition& partition() const { return part_; }
  EliminationMap& map() { return map_; }

 private:
  struct Cache {
    Vector x;
    Elimination elim;
    double value;
    Vector grad_x;
  };
  const Cache& ensure(const Vector& x);

  const Objective& obj_;
  BlockPartition part_;
  EliminationMap& map_;
  std::optional<Cache> cache_;
  long fresh_h_ = 0;
  WorkStats hessian_work_;
};

}  // namespace nlreduce::elimination
