#include "nlreduce/optim/line_search.hpp"

#include <stdexcept>
#include <string>

#include "nlreduce/error.hpp"

namespace nlreduce::optim {

void ArmijoParams::validate() const {
  if (!(c1 > 0.0 && c1 < 1.0)) throw std::invalid_argument("ArmijoParams: c1 must be in (0,1)");
  if (!(shrink > 0.0 && shrink < 1.0)) throw std::invalid_argument("ArmijoParams: shrink must be in (0,1)");
  if (!(t0 > 0.0)) throw std::invalid_argument("ArmijoParams: t0 must be > 0");
  if (max_trials < 1) throw std::invalid_argument("ArmijoParams: max_trials must be >= 1");
}

LineSearchResult armijo_search(const std::function<double(const Vector&)>& f, const Vector& x,
                               const Vector& d, const Vector& g, double f0, const ArmijoParams& p) {
  p.validate();
  const double slope = linalg::dot(g, d);
  if (!(slope < 0.0)) {
    throw std::invalid_argument("armijo_search: d is not a descent direction (g^T d = " +
                                std::to_string(slope) + ")");
  }
  double t = p.t0;
  double last = f0;
  for (int trial = 1; trial <= p.max_trials; ++trial, t *= p.shrink) {
    Vector xt = x;
    linalg::axpy(t, d, xt);
    last = f(xt);
    if (last <= f0 + p.c1 * t * slope) return LineSearchResult{t, last, trial};
  }
  throw LineSearchFailure("armijo_search: no sufficient decrease after " +
                              std::to_string(p.max_trials) + " trials",
                          last, p.max_trials);
}

LineSearchResult armijo_search(const std::function<double(const Vector&)>& f, const Vector& x,
                               const Vector& d, const Vector& g, const ArmijoParams& p) {
  return armijo_search(f, x, d, g, f(x), p);
}

}  // namespace nlreduce::optim
