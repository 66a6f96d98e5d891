#include "nlreduce/optim/pgd_inexact.hpp"

#include <string>
#include <tuple>

#include "nlreduce/elimination/reduced.hpp"

namespace nlreduce::optim {

InexactPgdResult pgd_inexact(const problems::Objective& obj, const problems::BlockPartition& part,
                             elimination::ScheduledInexactElimination& elim, const Vector& x0,
                             const Vector& y0, const InexactPgdOptions& opts) {
  opts.stop.validate();
  opts.armijo.validate();
  linalg::require_size(x0, part.n_x(), "pgd_inexact x0");
  linalg::require_size(y0, part.n_y(), "pgd_inexact y0");

  Stopwatch clock;
  elim.set_warm_start(y0);
  elimination::ReducedObjective reduced(obj, part, elim);

  Vector x = x0;
  auto [fx, g] = reduced.value_and_gradient(x);
  const double g0 = linalg::norm2(g);
  const double threshold = opts.stop.threshold(g0);
  elim.set_floor(opts.floor_fraction * threshold);

  InexactPgdResult out;
  long inner_seen = 0;
  auto push_row = [&](int iter, double step) {
    const problems::WorkStats w = reduced.work();
    const double gn = linalg::norm2(g);
    const IterationRow row{iter, fx, gn, iter == 0 ? 1.0 : (g0 > 0.0 ? gn / g0 : 0.0), step,
                           w.inner_iterations - inner_seen, w.linear_solves, clock.seconds()};
    inner_seen = w.inner_iterations;
    out.record.push(row);
    if (opts.store_iterates) out.record.iterates().push_back(x);
    if (iter > 0 && opts.on_iteration) opts.on_iteration(row, x);
  };
  push_row(0, 0.0);

  for (int k = 0;;) {
    if (linalg::norm2(g) <= threshold) {
      const double y_res = reduced.last_elimination().residual;
      const double y_threshold = threshold > 0.0 ? threshold : elim.tolerance();
      if (y_res <= y_threshold) break;
      // x-part converged on a y that is not accurate enough yet.
      elim.tighten_to(y_threshold);
      reduced.invalidate();
      std::tie(fx, g) = reduced.value_and_gradient(x);
      continue;
    }
    if (k >= opts.stop.max_iter) {
      throw MaxIterReached("pgd_inexact: relative gradient " + std::to_string(linalg::norm2(g) / g0) +
                               " after " + std::to_string(k) + " iterations",
                           std::move(out.record), x);
    }

    const LineSearchResult ls = armijo_search(
        [&reduced](const Vector& v) { return reduced.value(v); }, x, -g, g, fx, opts.armijo);
    linalg::axpy(-ls.t, g, x);
    // Cached from the accepted trial point.
    reduced.value_and_gradient(x);
    elim.accept(reduced.last_elimination().y);
    reduced.invalidate();
    std::tie(fx, g) = reduced.value_and_gradient(x);
    ++k;
    push_row(k, ls.t);
  }

  out.x = x;
  out.y = reduced.last_elimination().y;
  out.y_residual = reduced.last_elimination().residual;
  return out;
}

}  // namespace nlreduce::optim
