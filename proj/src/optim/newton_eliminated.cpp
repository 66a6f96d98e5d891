#include "nlreduce/optim/newton_eliminated.hpp"

#include <string>
#include <tuple>

#include "nlreduce/elimination/reduced.hpp"

namespace nlreduce::optim {

OptimResult newton_eliminated(const problems::Objective& obj, const problems::BlockPartition& part,
                              elimination::EliminationMap& elim, const Vector& x0,
                              const NewtonElimOptions& opts) {
  opts.stop.validate();
  opts.armijo.validate();
  linalg::require_size(x0, part.n_x(), "newton_eliminated x0");

  Stopwatch clock;
  problems::WorkStats newton_work;
  elimination::ReducedObjective reduced(obj, part, elim);
  auto work = [&] { return reduced.work() + newton_work; };

  OptimResult out{x0, {}};
  Vector& x = out.x;
  auto [fx, g] = reduced.value_and_gradient(x);
  const double g0 = linalg::norm2(g);
  const double threshold = opts.stop.threshold(g0);

  long inner_seen = work().inner_iterations;
  out.record.push(IterationRow{0, fx, g0, 1.0, 0.0, 0, work().linear_solves, clock.seconds()});
  if (opts.store_iterates) out.record.iterates().push_back(x);

  const int cg_max = linalg::default_cg_max_iter(part.n_x());
  for (int k = 0;; ++k) {
    const double gn = linalg::norm2(g);
    if (gn <= threshold) return out;
    if (k >= opts.stop.max_iter) {
      throw MaxIterReached("newton_eliminated: relative gradient " + std::to_string(gn / g0) +
                               " after " + std::to_string(k) + " iterations",
                           std::move(out.record), x);
    }

    const linalg::LinOp jf = elimination::reduced_hessian_op(
        obj, part, part.join(x, reduced.last_elimination().y), opts.hessian_cg_rel_tol,
        &newton_work);
    const linalg::CgResult cg = linalg::cg_solve(jf, -g, Vector(part.n_x(), 0.0), opts.cg_rel_tol, cg_max);
    newton_work.linear_solves += 1;
    newton_work.cg_iterations += cg.iterations;
    const Vector& delta = cg.x;
    const double slope = linalg::dot(g, delta);
    if (!(slope < 0.0)) {
      throw DegenerateCurvature("newton_eliminated: Newton direction has g^T d = " +
                                std::to_string(slope));
    }

    const LineSearchResult ls = armijo_search([&reduced](const Vector& v) { return reduced.value(v); },
                                              x, delta, g, fx, opts.armijo);
    linalg::axpy(ls.t, delta, x);
    std::tie(fx, g) = reduced.value_and_gradient(x);

    const problems::WorkStats w = work();
    const double gn_new = linalg::norm2(g);
    const IterationRow row{k + 1, fx, gn_new, g0 > 0.0 ? gn_new / g0 : 0.0, ls.t,
                           w.inner_iterations - inner_seen, w.linear_solves, clock.seconds()};
    inner_seen = w.inner_iterations;
    out.record.push(row);
    if (opts.store_iterates) out.record.iterates().push_back(x);
    if (opts.on_iteration) opts.on_iteration(row, x);
  }
}

}  // namespace nlreduce::optim
