#include "nlreduce/optim/gradient_descent.hpp"

#include <stdexcept>
#include <string>

namespace nlreduce::optim {

double optimal_step_quadratic(const Vector& g, const linalg::LinOp& hvp) {
  const double gg = linalg::dot(g, g);
  if (gg == 0.0) throw std::invalid_argument("optimal_step_quadratic: zero gradient");
  const double ghg = linalg::dot(g, hvp(g));
  if (!(ghg > 0.0)) {
    throw DegenerateCurvature("optimal_step_quadratic: g^T H g = " + std::to_string(ghg) + " <= 0");
  }
  return gg / ghg;
}

OptimResult gradient_descent(problems::SmoothFunction& f, const Vector& x0, const GdOptions& opts) {
  opts.stop.validate();
  if (opts.step == StepMode::armijo) opts.armijo.validate();
  linalg::require_size(x0, f.dim(), "gradient_descent x0");
  if (!x0.all_finite()) throw std::invalid_argument("gradient_descent: x0 has non-finite entries");

  Stopwatch clock;
  OptimResult out{x0, {}};
  Vector& x = out.x;
  auto [fx, g] = f.value_and_gradient(x);
  const double g0 = linalg::norm2(g);
  const double threshold = opts.stop.threshold(g0);

  long inner_seen = f.work().inner_iterations;
  out.record.push(IterationRow{0, fx, g0, 1.0, 0.0, 0, f.work().linear_solves, clock.seconds()});
  if (opts.store_iterates) out.record.iterates().push_back(x);

  for (int k = 0;; ++k) {
    const double gn = linalg::norm2(g);
    if (gn <= threshold) return out;
    if (k >= opts.stop.max_iter) {
      throw MaxIterReached("gradient_descent: relative gradient " + std::to_string(gn / g0) +
                               " after " + std::to_string(k) + " iterations",
                           std::move(out.record), x);
    }

    double t;
    if (opts.step == StepMode::optimal_quadratic) {
      const std::optional<linalg::LinOp> h = f.hessian_op(x);
      if (!h) throw std::logic_error("gradient_descent: optimal step needs a Hessian operator");
      t = optimal_step_quadratic(g, *h);
    } else {
      const LineSearchResult ls = armijo_search([&f](const Vector& v) { return f.value(v); }, x, -g, g,
                                                fx, opts.armijo);
      t = ls.t;
    }
    linalg::axpy(-t, g, x);
    std::tie(fx, g) = f.value_and_gradient(x);

    const problems::WorkStats w = f.work();
    const double gn_new = linalg::norm2(g);
    const IterationRow row{k + 1,          fx, gn_new, g0 > 0.0 ? gn_new / g0 : 0.0, t,
                           w.inner_iterations - inner_seen, w.linear_solves, clock.seconds()};
    inner_seen = w.inner_iterations;
    out.record.push(row);
    if (opts.store_iterates) out.record.iterates().push_back(x);
    if (opts.on_iteration) opts.on_iteration(row, x);
  }
}

}  // namespace nlreduce::optim
