#include "nlreduce/linalg/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#ifdef NLREDUCE_HAVE_OPENMP
#include <omp.h>
#endif

namespace nlreduce::kernels {

namespace serial {

double dot(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

double max_value(std::span<const double> v) {
  double m = -std::numeric_limits<double>::infinity();
  for (double e : v) m = std::max(m, e);
  return m;
}

double sum_scaled_exp(std::span<const double> w, std::span<const double> s, double shift) {
  double sum = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) sum += w[i] * std::exp(s[i] - shift);
  return sum;
}

void gemv(std::size_t rows, std::size_t cols, std::span<const double> a,
          std::span<const double> x, std::span<double> y) {
  for (std::size_t i = 0; i < rows; ++i) {
    const double* row = a.data() + i * cols;
    double sum = 0.0;
    for (std::size_t j = 0; j < cols; ++j) sum += row[j] * x[j];
    y[i] = sum;
  }
}

void gemm(std::size_t m, std::size_t k, std::size_t n, std::span<const double> a,
          std::span<const double> b, std::span<double> c) {
  std::fill(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(m * n), 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    double* crow = c.data() + i * n;
    for (std::size_t l = 0; l < k; ++l) {
      const double ail = a[i * k + l];
      const double* brow = b.data() + l * n;
      for (std::size_t j = 0; j < n; ++j) crow[j] += ail * brow[j];
    }
  }
}

}  // namespace serial

namespace parallel {
namespace {

std::size_t block_count(std::size_t n) {
  return (n + kReductionBlock - 1) / kReductionBlock;
}

// Evaluates `block_sum(begin, end)` over fixed blocks and adds the partial
// sums in block order.
template <class BlockSum>
double blocked_reduce(std::size_t n, BlockSum block_sum) {
  const std::size_t blocks = block_count(n);
  if (blocks <= 1) return block_sum(0, n);
  std::vector<double> partial(blocks);
  const auto nb = static_cast<std::ptrdiff_t>(blocks);
#pragma omp parallel for schedule(static) if (n >= kVectorParallelThreshold)
  for (std::ptrdiff_t blk = 0; blk < nb; ++blk) {
    const std::size_t begin = static_cast<std::size_t>(blk) * kReductionBlock;
    const std::size_t end = std::min(n, begin + kReductionBlock);
    partial[static_cast<std::size_t>(blk)] = block_sum(begin, end);
  }
  double sum = 0.0;
  for (double p : partial) sum += p;
  return sum;
}

}  // namespace

double dot(std::span<const double> a, std::span<const double> b) {
  return blocked_reduce(a.size(), [&](std::size_t begin, std::size_t end) {
    double sum = 0.0;
    for (std::size_t i = begin; i < end; ++i) sum += a[i] * b[i];
    return sum;
  });
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  const auto n = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for schedule(static) if (x.size() >= kVectorParallelThreshold)
  for (std::ptrdiff_t i = 0; i < n; ++i) y[static_cast<std::size_t>(i)] += alpha * x[static_cast<std::size_t>(i)];
}

double max_value(std::span<const double> v) {
  double m = -std::numeric_limits<double>::infinity();
  const auto n = static_cast<std::ptrdiff_t>(v.size());
#pragma omp parallel for schedule(static) reduction(max : m) if (v.size() >= kVectorParallelThreshold)
  for (std::ptrdiff_t i = 0; i < n; ++i) m = std::max(m, v[static_cast<std::size_t>(i)]);
  return m;
}

double sum_scaled_exp(std::span<const double> w, std::span<const double> s, double shift) {
  return blocked_reduce(w.size(), [&](std::size_t begin, std::size_t end) {
    double sum = 0.0;
    for (std::size_t i = begin; i < end; ++i) sum += w[i] * std::exp(s[i] - shift);
    return sum;
  });
}

void gemv(std::size_t rows, std::size_t cols, std::span<const double> a,
          std::span<const double> x, std::span<double> y) {
  const auto nr = static_cast<std::ptrdiff_t>(rows);
#pragma omp parallel for schedule(static) if (rows * cols >= kMatrixParallelThreshold)
  for (std::ptrdiff_t i = 0; i < nr; ++i) {
    const double* row = a.data() + static_cast<std::size_t>(i) * cols;
    double sum = 0.0;
    for (std::size_t j = 0; j < cols; ++j) sum += row[j] * x[j];
    y[static_cast<std::size_t>(i)] = sum;
  }
}

void gemm(std::size_t m, std::size_t k, std::size_t n, std::span<const double> a,
          std::span<const double> b, std::span<double> c) {
  const auto nm = static_cast<std::ptrdiff_t>(m);
#pragma omp parallel for schedule(static) if (m * k * n >= kMatrixParallelThreshold)
  for (std::ptrdiff_t ii = 0; ii < nm; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    double* crow = c.data() + i * n;
    std::fill(crow, crow + n, 0.0);
    for (std::size_t l = 0; l < k; ++l) {
      const double ail = a[i * k + l];
      const double* brow = b.data() + l * n;
      for (std::size_t j = 0; j < n; ++j) crow[j] += ail * brow[j];
    }
  }
}

}  // namespace parallel

bool openmp_enabled() {
#ifdef NLREDUCE_HAVE_OPENMP
  return true;
#else
  return false;
#endif
}

int max_threads() {
#ifdef NLREDUCE_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace nlreduce::kernels
