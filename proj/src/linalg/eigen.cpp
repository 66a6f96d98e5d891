#include "nlreduce/linalg/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <string>

#include "nlreduce/error.hpp"

namespace nlreduce::linalg {
namespace {

double off_diagonal_norm(const Matrix& a) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) sum += a(i, j) * a(i, j);
  return std::sqrt(sum);
}

// Applies the rotation that annihilates a(p,q): a <- J^T a J, v <- v J.
void rotate(Matrix& a, Matrix& v, std::size_t p, std::size_t q) {
  const std::size_t n = a.rows();
  const double apq = a(p, q);
  const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
  double t;
  if (std::abs(theta) > 1e150) {
    t = 0.5 / theta;
  } else {
    t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  }
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;

  for (std::size_t k = 0; k < n; ++k) {
    const double akp = a(k, p);
    const double akq = a(k, q);
    a(k, p) = c * akp - s * akq;
    a(k, q) = s * akp + c * akq;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const double apk = a(p, k);
    const double aqk = a(q, k);
    a(p, k) = c * apk - s * aqk;
    a(q, k) = s * apk + c * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double vkp = v(k, p);
    const double vkq = v(k, q);
    v(k, p) = c * vkp - s * vkq;
    v(k, q) = s * vkp + c * vkq;
  }
}

// Lower-triangular Cholesky factor, or nullopt on a non-positive pivot.
std::optional<Matrix> cholesky_factor(const SymMatrix& m) {
  const std::size_t n = m.order();
  Matrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = m(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (!(d > 0.0) || !std::isfinite(d)) return std::nullopt;
    const double ljj = std::sqrt(d);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = m(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / ljj;
    }
  }
  return l;
}

}  // namespace

SymEigen sym_eigen(const SymMatrix& m, int max_sweeps) {
  const std::size_t n = m.order();
  if (n == 0) throw std::invalid_argument("sym_eigen: empty matrix");

  Matrix a = m.matrix();
  Matrix v = Matrix::identity(n);
  const double scale = a.frobenius_norm();
  const double target = 1e-15 * scale;

  int sweeps = 0;
  while (scale > 0.0 && off_diagonal_norm(a) > target) {
    if (sweeps >= max_sweeps) {
      throw NonConvergence("sym_eigen: off-diagonal norm still " +
                               std::to_string(off_diagonal_norm(a)) + " after " +
                               std::to_string(sweeps) + " sweeps",
                           off_diagonal_norm(a), sweeps);
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        // Entry already negligible next to both diagonal entries.
        const double g = 1e-18 * std::max(std::abs(a(p, p)), std::abs(a(q, q)));
        if (std::abs(apq) <= g) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        rotate(a, v, p, q);
      }
    }
    ++sweeps;
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });

  SymEigen out{Vector(n), Matrix(n, n), sweeps};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]);
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

double condition_number(const SymMatrix& m) {
  const SymEigen e = sym_eigen(m);
  const double lo = e.values[0];
  const double hi = e.values[e.values.size() - 1];
  if (!(lo > 0.0)) {
    throw NotSPD("condition_number: smallest eigenvalue " + std::to_string(lo) + " is not positive");
  }
  return hi / lo;
}

bool spd_check(const SymMatrix& m) { return m.order() > 0 && cholesky_factor(m).has_value(); }

Cholesky::Cholesky(const SymMatrix& m) {
  auto l = cholesky_factor(m);
  if (!l) throw NotSPD("Cholesky: matrix is not symmetric positive definite");
  l_ = std::move(*l);
}

Vector Cholesky::solve(const Vector& b) const {
  const std::size_t n = order();
  require_size(b, n, "Cholesky::solve");
  Vector y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = b[i];
    for (std::size_t k = 0; k < i; ++k) s -= l_(i, k) * y[k];
    y[i] = s / l_(i, i);
  }
  Vector x(n);
  for (std::size_t ii = n; ii-- > 0;) {
    double s = y[ii];
    for (std::size_t k = ii + 1; k < n; ++k) s -= l_(k, ii) * x[k];
    x[ii] = s / l_(ii, ii);
  }
  return x;
}

Matrix Cholesky::solve(const Matrix& b) const {
  if (b.rows() != order()) throw DimensionMismatch("Cholesky::solve: row count differs");
  Matrix x(b.rows(), b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j) x.set_col(j, solve(b.col(j)));
  return x;
}

}  // namespace nlreduce::linalg
