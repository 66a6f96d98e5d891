#pragma once

// Dense data-parallel kernels.
//
// Every kernel has a plain serial reference in `kernels::serial` and an
// OpenMP version in `kernels::parallel`. The library calls the parallel
// versions. Reductions in `parallel` are split into fixed-size blocks whose
// partial sums are combined in block order, so their result does not depend
// on the number of threads. They may differ from the serial reference in the
// last few bits.

#include <cstddef>
#include <span>

namespace nlreduce::kernels {

/// Block length used by the parallel reductions.
inline constexpr std::size_t kReductionBlock = 1024;

/// Below these sizes the parallel kernels run on the calling thread.
inline constexpr std::size_t kVectorParallelThreshold = std::size_t{1} << 15;
inline constexpr std::size_t kMatrixParallelThreshold = std::size_t{1} << 14;

namespace serial {

double dot(std::span<const double> a, std::span<const double> b);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
double max_value(std::span<const double> v);
// sum_i w_i * exp(s_i - shift)
double sum_scaled_exp(std::span<const double> w, std::span<const double> s, double shift);
// y = A x, A row-major rows x cols
void gemv(std::size_t rows, std::size_t cols, std::span<const double> a,
          std::span<const double> x, std::span<double> y);
// C = A B, A is m x k, B is k x n, all row-major
void gemm(std::size_t m, std::size_t k, std::size_t n, std::span<const double> a,
          std::span<const double> b, std::span<double> c);

}  // namespace serial

namespace parallel {

double dot(std::span<const double> a, std::span<const double> b);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
double max_value(std::span<const double> v);
double sum_scaled_exp(std::span<const double> w, std::span<const double> s, double shift);
void gemv(std::size_t rows, std::size_t cols, std::span<const double> a,
          std::span<const double> x, std::span<double> y);
void gemm(std::size_t m, std::size_t k, std::size_t n, std::span<const double> a,
          std::span<const double> b, std::span<double> c);

}  // namespace parallel

bool openmp_enabled();
int max_threads();

}  // namespace nlreduce::kernels
