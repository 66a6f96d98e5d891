#include "nlreduce/problems/logsumexp.hpp"

#include <cmath>
#include <stdexcept>

#include "nlreduce/linalg/kernels.hpp"

namespace nlreduce::problems {
namespace {

Vector benchmark_a(std::size_t n) {
  Vector a(n);
  for (std::size_t i = 0; i < n; ++i) a[i] = static_cast<double>(i + 1);
  return a;
}

Vector two_level(std::size_t n, std::size_t n_el, double first, double rest) {
  Vector v(n, rest);
  for (std::size_t i = 0; i < n_el && i < n; ++i) v[i] = first;
  return v;
}

}  // namespace

LogSumExpProblem::LogSumExpProblem(std::size_t n, std::size_t n_el)
    : LogSumExpProblem(benchmark_a(n), two_level(n, n_el, 10.0, 1.0),
                       two_level(n, n_el, 1e-4, 1e-2), n_el) {
  if (n_el == 0 || n_el >= n) throw std::invalid_argument("LogSumExpProblem: need 1 <= n_el < n");
}

LogSumExpProblem::LogSumExpProblem(Vector a, Vector b, Vector d, std::size_t n_el)
    : a_(std::move(a)), b_(std::move(b)), d_(std::move(d)), n_el_(n_el) {
  if (a_.empty()) throw std::invalid_argument("LogSumExpProblem: empty problem");
  linalg::require_size(b_, a_.size(), "LogSumExpProblem b");
  linalg::require_size(d_, a_.size(), "LogSumExpProblem d");
  for (double ai : a_) {
    if (!(ai > 0.0)) throw std::invalid_argument("LogSumExpProblem: a_i must be positive");
  }
  for (double di : d_) {
    if (!(di >= 0.0)) throw std::invalid_argument("LogSumExpProblem: d_i must be non-negative");
  }
}

BlockPartition LogSumExpProblem::partition() const { return BlockPartition::leading(dim(), n_el_); }

LogSumExpProblem::Softmax LogSumExpProblem::softmax(const Vector& z) const {
  linalg::require_size(z, dim(), "LogSumExpProblem");
  Softmax sm{0.0, 0.0, Vector(dim())};
  for (std::size_t i = 0; i < dim(); ++i) sm.s[i] = b_[i] * z[i];
  sm.shift = kernels::parallel::max_value(sm.s.span());
  sm.sum = kernels::parallel::sum_scaled_exp(a_.span(), sm.s.span(), sm.shift);
  return sm;
}

double LogSumExpProblem::value(const Vector& z) const {
  const Softmax sm = softmax(z);
  double quad = 0.0;
  for (std::size_t i = 0; i < dim(); ++i) quad += d_[i] * z[i] * z[i];
  return sm.shift + std::log(sm.sum) + 0.5 * quad;
}

Vector LogSumExpProblem::gradient(const Vector& z) const { return value_and_gradient(z).second; }

std::pair<double, Vector> LogSumExpProblem::value_and_gradient(const Vector& z) const {
  const Softmax sm = softmax(z);
  Vector g(dim());
  double quad = 0.0;
  for (std::size_t i = 0; i < dim(); ++i) {
    const double p = a_[i] * std::exp(sm.s[i] - sm.shift) / sm.sum;
    g[i] = b_[i] * p + d_[i] * z[i];
    quad += d_[i] * z[i] * z[i];
  }
  return {sm.shift + std::log(sm.sum) + 0.5 * quad, std::move(g)};
}

Vector LogSumExpProblem::hvp(const Vector& z, const Vector& v) const {
  linalg::require_size(v, dim(), "LogSumExpProblem::hvp");
  const Softmax sm = softmax(z);
  Vector q(dim());  // b_i p_i
  for (std::size_t i = 0; i < dim(); ++i) q[i] = b_[i] * a_[i] * std::exp(sm.s[i] - sm.shift) / sm.sum;
  const double qv = linalg::dot(q, v);
  Vector out(dim());
  for (std::size_t i = 0; i < dim(); ++i) out[i] = q[i] * b_[i] * v[i] - q[i] * qv + d_[i] * v[i];
  return out;
}

}  // namespace nlreduce::problems
