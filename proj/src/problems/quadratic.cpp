#include "nlreduce/problems/quadratic.hpp"

#include <string>

#include "nlreduce/error.hpp"
#include "nlreduce/linalg/eigen.hpp"
#include "nlreduce/linalg/random.hpp"

namespace nlreduce::problems {

QuadraticProblem::QuadraticProblem(SymMatrix a, Vector b, double c, BlockPartition partition)
    : a_(std::move(a)), b_(std::move(b)), c_(c), partition_(std::move(partition)) {
  linalg::require_size(b_, a_.order(), "QuadraticProblem b");
  if (partition_.n() != a_.order()) {
    throw DimensionMismatch("QuadraticProblem: partition dimension " +
                            std::to_string(partition_.n()) + " != order " +
                            std::to_string(a_.order()));
  }
  if (!linalg::spd_check(a_)) throw NotSPD("QuadraticProblem: A is not symmetric positive definite");
}

double QuadraticProblem::value(const Vector& z) const { return value_and_gradient(z).first; }

Vector QuadraticProblem::gradient(const Vector& z) const {
  linalg::require_size(z, dim(), "QuadraticProblem::gradient");
  return a_ * z - b_;
}

std::pair<double, Vector> QuadraticProblem::value_and_gradient(const Vector& z) const {
  linalg::require_size(z, dim(), "QuadraticProblem::value");
  const Vector az = a_ * z;
  const double v = 0.5 * linalg::dot(z, az) - linalg::dot(b_, z) + c_;
  return {v, az - b_};
}

Vector QuadraticProblem::hvp(const Vector& /*z*/, const Vector& v) const {
  linalg::require_size(v, dim(), "QuadraticProblem::hvp");
  return a_ * v;
}

BlockHessian QuadraticProblem::block_hessian(const Vector& /*z*/, const BlockPartition& part) const {
  QuadraticBlocks blk = blocks(part);
  return BlockHessian{LinOp::owning(std::move(blk.a11)), LinOp::owning(std::move(blk.a12)),
                      LinOp::owning(std::move(blk.a21)), LinOp::owning(std::move(blk.a22))};
}

QuadraticBlocks QuadraticProblem::blocks(const BlockPartition& part) const {
  if (part.n() != dim()) throw DimensionMismatch("QuadraticProblem::blocks: partition size");
  const auto& xi = part.x_indices();
  const auto& yi = part.y_indices();
  return QuadraticBlocks{a_.select(xi),         a_.matrix().select(xi, yi),
                         a_.matrix().select(yi, xi), a_.select(yi),
                         part.gather_x(b_),     part.gather_y(b_)};
}

Vector equispaced(std::size_t n, SpectrumRange range) {
  Vector v(n);
  if (n == 1) {
    v[0] = range.lo;
    return v;
  }
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = range.hi - (range.hi - range.lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return v;
}

QuadraticProblem build_test_matrix(const TestMatrixSpec& spec) {
  if (spec.n_x == 0 || spec.n_y == 0) throw std::invalid_argument("build_test_matrix: n_x, n_y must be >= 1");
  for (const SpectrumRange& r : {spec.spec_x, spec.spec_y}) {
    if (!(r.lo > 0.0 && r.lo <= r.hi)) throw std::invalid_argument("build_test_matrix: need 0 < lo <= hi");
  }
  if (!(spec.coupling_eps >= 0.0)) throw std::invalid_argument("build_test_matrix: coupling_eps must be >= 0");

  const std::size_t nx = spec.n_x;
  const std::size_t ny = spec.n_y;
  const std::size_t n = nx + ny;
  linalg::Rng rng(spec.seed);

  const Matrix q1 = linalg::random_orthogonal(nx, rng);
  const Matrix q2 = linalg::random_orthogonal(ny, rng);
  const Matrix a11 = q1 * Matrix::diagonal(equispaced(nx, spec.spec_x)) * q1.transpose();
  const Matrix a22 = q2 * Matrix::diagonal(equispaced(ny, spec.spec_y)) * q2.transpose();
  Vector b(n);
  for (std::size_t i = 0; i < n; ++i) b[i] = rng.uniform(-1.0, 1.0);

  double eps = spec.coupling_eps;
  for (int halvings = 0; halvings <= 60; ++halvings, eps *= 0.5) {
    Matrix a(n, n);
    for (std::size_t i = 0; i < nx; ++i)
      for (std::size_t j = 0; j < nx; ++j) a(i, j) = a11(i, j);
    for (std::size_t i = 0; i < ny; ++i)
      for (std::size_t j = 0; j < ny; ++j) a(nx + i, nx + j) = a22(i, j);
    for (std::size_t i = 0; i < nx; ++i) {
      for (std::size_t j = 0; j < ny; ++j) {
        const double e = rng.uniform(-1.0, 1.0) * eps;
        a(i, nx + j) = e;
        a(nx + j, i) = e;
      }
    }
    SymMatrix sym(std::move(a));
    if (linalg::spd_check(sym)) {
      return QuadraticProblem(std::move(sym), b, 0.0, BlockPartition::trailing(n, ny));
    }
  }
  throw ConstructionFailure("build_test_matrix: no SPD coupling found after 60 halvings");
}

}  // namespace nlreduce::problems
