#include "nlreduce/elimination/reduced.hpp"

#include <stdexcept>

#include "nlreduce/error.hpp"

namespace nlreduce::elimination {

linalg::LinOp reduced_hessian_op(const Objective& obj, const BlockPartition& part, const Vector& z,
                                 double cg_rel_tol, WorkStats* counter) {
  problems::BlockHessian h = obj.block_hessian(z, part);
  const int cg_max = linalg::default_cg_max_iter(part.n_y());
  return linalg::LinOp(part.n_x(), [h = std::move(h), cg_rel_tol, cg_max, counter,
                                    n_y = part.n_y()](const Vector& v, Vector& out) {
    const Vector rhs = h.yx(v);
    const linalg::CgResult w = linalg::cg_solve(h.yy, rhs, Vector(n_y), cg_rel_tol, cg_max);
    if (counter) {
      ++counter->linear_solves;
      counter->cg_iterations += w.iterations;
    }
    out = h.xx(v) - h.xy(w.x);
  });
}

Vector reduced_hvp_quadratic(const problems::QuadraticProblem& problem, const BlockPartition& part,
                             const Vector& v, double cg_rel_tol) {
  linalg::require_size(v, part.n_x(), "reduced_hvp_quadratic");
  const Vector z(problem.dim());
  return reduced_hessian_op(problem, part, z, cg_rel_tol)(v);
}

ReducedObjective::ReducedObjective(const Objective& obj, BlockPartition part, EliminationMap& map)
    : obj_(obj), part_(std::move(part)), map_(map) {
  if (part_.n() != obj_.dim()) throw DimensionMismatch("ReducedObjective: partition size");
}

const ReducedObjective::Cache& ReducedObjective::ensure(const Vector& x) {
  linalg::require_size(x, part_.n_x(), "ReducedObjective");
  if (cache_ && cache_->x == x) return *cache_;
  Elimination elim = map_.eliminate(x);
  ++fresh_h_;
  auto [value, grad] = obj_.value_and_gradient(part_.join(x, elim.y));
  cache_ = Cache{x, std::move(elim), value, part_.gather_x(grad)};
  return *cache_;
}

double ReducedObjective::value(const Vector& x) { return ensure(x).value; }

Vector ReducedObjective::gradient(const Vector& x) { return ensure(x).grad_x; }

std::pair<double, Vector> ReducedObjective::value_and_gradient(const Vector& x) {
  const Cache& c = ensure(x);
  return {c.value, c.grad_x};
}

std::optional<linalg::LinOp> ReducedObjective::hessian_op(const Vector& x) {
  const Cache& c = ensure(x);
  return reduced_hessian_op(obj_, part_, part_.join(c.x, c.elim.y), linalg::kExactSolveTol,
                            &hessian_work_);
}

WorkStats ReducedObjective::work() const { return map_.work() + hessian_work_; }

const Elimination& ReducedObjective::last_elimination() const {
  if (!cache_) throw std::logic_error("ReducedObjective: no evaluation cached");
  return cache_->elim;
}

const Vector& ReducedObjective::last_x() const {
  if (!cache_) throw std::logic_error("ReducedObjective: no evaluation cached");
  return cache_->x;
}

}  // namespace nlreduce::elimination
