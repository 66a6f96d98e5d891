#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#ifdef NLREDUCE_HAVE_OPENMP
#include <omp.h>
#endif

#include "nlreduce/linalg/kernels.hpp"

namespace k = nlreduce::kernels;

namespace {

std::vector<double> data(std::size_t n, std::uint64_t seed, double lo = -1.0, double hi = 1.0) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(n);
  for (double& x : v) x = u(gen);
  return v;
}

/// Runs f with `threads` OpenMP threads (a no-op without OpenMP).
template <class F>
auto with_threads(int threads, F f) {
#ifdef NLREDUCE_HAVE_OPENMP
  const int before = omp_get_max_threads();
  omp_set_num_threads(threads);
  auto r = f();
  omp_set_num_threads(before);
  return r;
#else
  (void)threads;
  return f();
#endif
}

}  // namespace

TEST_CASE("dot: parallel agrees with serial on both sides of the threshold") {
  for (std::size_t n : {std::size_t{0}, std::size_t{1}, std::size_t{1000}, k::kVectorParallelThreshold - 1,
                        k::kVectorParallelThreshold + 3, std::size_t{300000}}) {
    const auto a = data(n, 1), b = data(n, 2);
    const double s = k::serial::dot(a, b);
    const double p = k::parallel::dot(a, b);
    long double ref = 0.0L;
    for (std::size_t i = 0; i < n; ++i) ref += static_cast<long double>(a[i]) * b[i];
    CHECK(std::abs(s - p) <= 1e-12 * (1.0 + std::abs(s)));
    CHECK(std::abs(p - static_cast<double>(ref)) <= 1e-11 * (1.0 + std::abs(p)));
  }
}

TEST_CASE("reductions are bitwise independent of the thread count") {
  const std::size_t n = 400003;
  const auto a = data(n, 3), b = data(n, 4);
  const auto s = data(n, 5, -30.0, 30.0);
  const double d1 = with_threads(1, [&] { return k::parallel::dot(a, b); });
  const double e1 = with_threads(1, [&] { return k::parallel::sum_scaled_exp(a, s, 30.0); });
  const double m1 = with_threads(1, [&] { return k::parallel::max_value(s); });
  for (int t : {2, 3, 4, 7}) {
    CHECK(with_threads(t, [&] { return k::parallel::dot(a, b); }) == d1);
    CHECK(with_threads(t, [&] { return k::parallel::sum_scaled_exp(a, s, 30.0); }) == e1);
    CHECK(with_threads(t, [&] { return k::parallel::max_value(s); }) == m1);
  }
}

TEST_CASE("axpy and max_value match serial exactly") {
  const std::size_t n = 100000;
  const auto x = data(n, 6);
  auto ys = data(n, 7);
  auto yp = ys;
  k::serial::axpy(-0.75, x, ys);
  k::parallel::axpy(-0.75, x, yp);
  CHECK(ys == yp);
  CHECK(k::serial::max_value(x) == k::parallel::max_value(x));
  const std::vector<double> small{-3.0, -1.0, -2.0};
  CHECK(k::parallel::max_value(small) == -1.0);
}

TEST_CASE("sum_scaled_exp matches a direct sum") {
  const std::size_t n = 70000;
  const auto w = data(n, 8, 0.0, 2.0);
  const auto s = data(n, 9, -5.0, 5.0);
  long double ref = 0.0L;
  for (std::size_t i = 0; i < n; ++i) ref += w[i] * std::exp(static_cast<long double>(s[i]) - 5.0L);
  const double p = k::parallel::sum_scaled_exp(w, s, 5.0);
  CHECK(std::abs(p - static_cast<double>(ref)) <= 1e-12 * static_cast<double>(ref));
  CHECK(std::abs(k::serial::sum_scaled_exp(w, s, 5.0) - p) <= 1e-12 * p);
}

TEST_CASE("gemv and gemm are bitwise equal to serial") {
  for (std::size_t n : {std::size_t{7}, std::size_t{130}, std::size_t{260}}) {
    const auto a = data(n * (n + 3), 10), x = data(n + 3, 11);
    std::vector<double> ys(n), yp(n);
    k::serial::gemv(n, n + 3, a, x, ys);
    k::parallel::gemv(n, n + 3, a, x, yp);
    CHECK(ys == yp);
    for (std::size_t i = 0; i < n; ++i) {
      double r = 0.0;
      for (std::size_t j = 0; j < n + 3; ++j) r += a[i * (n + 3) + j] * x[j];
      CHECK(std::abs(r - ys[i]) <= 1e-12 * (1.0 + std::abs(r)));
    }

    const auto b = data((n + 3) * 5, 12);
    std::vector<double> cs(n * 5), cp(n * 5);
    k::serial::gemm(n, n + 3, 5, a, b, cs);
    k::parallel::gemm(n, n + 3, 5, a, b, cp);
    CHECK(cs == cp);
    double r = 0.0;
    for (std::size_t j = 0; j < n + 3; ++j) r += a[j] * b[j * 5 + 4];
    CHECK(std::abs(r - cs[4]) <= 1e-12 * (1.0 + std::abs(r)));
  }
}

TEST_CASE("openmp status is consistent") {
  CHECK(k::max_threads() >= 1);
  if (!k::openmp_enabled()) CHECK(k::max_threads() == 1);
}
