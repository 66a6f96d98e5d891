#include "nlreduce/optim/alternating.hpp"

#include <string>
#include <tuple>

namespace nlreduce::optim {

QuadraticBlockSolver::QuadraticBlockSolver(const problems::QuadraticProblem& problem,
                                           problems::BlockPartition part)
    : part_(std::move(part)), blocks_(problem.blocks(part_)), chol_(blocks_.a22) {}

elimination::Elimination QuadraticBlockSolver::solve(const Vector& x, const Vector& y0, double tol) {
  linalg::require_size(x, part_.n_x(), "QuadraticBlockSolver x");
  linalg::require_size(y0, part_.n_y(), "QuadraticBlockSolver y0");
  const Vector rhs = blocks_.b2 - blocks_.a21 * x;
  const double r0 = linalg::norm2(blocks_.a22 * y0 - rhs);
  if (r0 <= tol) return {y0, 0, 0, r0};

  Vector y = chol_.solve(rhs);
  const double r = linalg::norm2(blocks_.a22 * y - rhs);
  work_.linear_solves += 1;
  work_.inner_iterations += 1;
  return {std::move(y), 1, 1, r};
}

AltMinResult alternating_minimization(const problems::Objective& obj,
                                      const problems::BlockPartition& part, const Vector& z0,
                                      elimination::InnerSolver& x_solver,
                                      elimination::InnerSolver& y_solver,
                                      const AltMinOptions& opts) {
  opts.stop.validate();
  linalg::require_size(z0, part.n(), "alternating_minimization z0");

  Stopwatch clock;
  AltMinResult out;
  Vector x = part.gather_x(z0);
  Vector y = part.gather_y(z0);
  Vector z = z0;

  auto [fz, g] = obj.value_and_gradient(z);
  const double g0 = linalg::norm2(g);
  const double threshold = opts.stop.threshold(g0);
  const double sub_tol = opts.sub_tol_fraction * threshold;
  out.half_sweep_values.push_back(fz);

  auto work = [&] { return x_solver.work() + y_solver.work(); };
  const problems::WorkStats w0 = work();
  long inner_seen = w0.inner_iterations;
  out.record.push(IterationRow{0, fz, g0, 1.0, 0.0, 0, 0, clock.seconds()});
  if (opts.store_iterates) out.record.iterates().push_back(z);

  for (int k = 0;; ++k) {
    const double gn = linalg::norm2(g);
    if (gn <= threshold) break;
    if (k >= opts.stop.max_iter) {
      throw MaxIterReached("alternating_minimization: relative gradient " + std::to_string(gn / g0) +
                               " after " + std::to_string(k) + " sweeps",
                           std::move(out.record), z);
    }

    // x-solver sees the partition swapped: its "x" is our y.
    x = x_solver.solve(y, x, sub_tol).y;
    out.half_sweep_values.push_back(obj.value(part.join(x, y)));
    y = y_solver.solve(x, y, sub_tol).y;

    const Vector z_new = part.join(x, y);
    const double step = linalg::norm2(z_new - z);
    z = z_new;
    std::tie(fz, g) = obj.value_and_gradient(z);
    out.half_sweep_values.push_back(fz);

    const problems::WorkStats w = work();
    const double gn_new = linalg::norm2(g);
    const IterationRow row{k + 1, fz, gn_new, g0 > 0.0 ? gn_new / g0 : 0.0, step,
                           w.inner_iterations - inner_seen, w.linear_solves - w0.linear_solves,
                           clock.seconds()};
    inner_seen = w.inner_iterations;
    out.record.push(row);
    if (opts.store_iterates) out.record.iterates().push_back(z);
    if (opts.on_iteration) opts.on_iteration(row, z);
  }

  out.z = std::move(z);
  return out;
}

}  // namespace nlreduce::optim
