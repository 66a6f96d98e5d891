#include "nlreduce/linalg/cg.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "nlreduce/error.hpp"

namespace nlreduce::linalg {

int default_cg_max_iter(std::size_t dim) { return static_cast<int>(10 * dim + 100); }

CgResult cg_solve(const LinOp& op, const Vector& rhs, const Vector& x0, double rel_tol,
                  int max_iter) {
  const std::size_t n = op.dim();
  require_size(rhs, n, "cg_solve rhs");
  require_size(x0, n, "cg_solve x0");
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw std::invalid_argument("cg_solve: rel_tol must be in (0,1)");

  const double rhs_norm = norm2(rhs);
  if (rhs_norm == 0.0) return CgResult{Vector(n), 0, 0.0};
  const double target = rel_tol * rhs_norm;

  CgResult result{x0, 0, 0.0};
  Vector& x = result.x;
  Vector ap(n);

  auto true_residual = [&](Vector& r) {
    op.apply(x, ap);
    r = rhs - ap;
    return norm2(r);
  };

  Vector r(n);
  double rnorm = true_residual(r);
  int& it = result.iterations;

  while (rnorm > target) {
    // One CG cycle from the explicit residual; leaves when the recursive
    // residual meets the target, then the outer loop re-checks explicitly.
    Vector p = r;
    double rr = rnorm * rnorm;
    bool restart = false;
    while (std::sqrt(rr) > target) {
      if (it >= max_iter) {
        throw NonConvergence("cg_solve: no convergence after " + std::to_string(it) +
                                 " iterations (relative residual " +
                                 std::to_string(true_residual(r) / rhs_norm) + ")",
                             true_residual(r), it);
      }
      op.apply(p, ap);
      const double pap = dot(p, ap);
      if (!(pap > 0.0)) {
        // Curvature lost to rounding; restart from the explicit residual.
        restart = true;
        break;
      }
      const double alpha = rr / pap;
      axpy(alpha, p, x);
      axpy(-alpha, ap, r);
      ++it;
      const double rr_new = dot(r, r);
      const double beta = rr_new / rr;
      rr = rr_new;
      for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
    }
    const double previous = rnorm;
    rnorm = true_residual(r);
    if (restart && rnorm >= previous) {
      throw NonConvergence("cg_solve: operator is not positive definite along a search direction",
                           rnorm, it);
    }
  }
  result.residual_norm = rnorm;
  return result;
}

}  // namespace nlreduce::linalg
