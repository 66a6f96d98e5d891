#include "nlreduce/bench/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nlreduce/bench/history_csv.hpp"
#include "nlreduce/elimination/exact.hpp"
#include "nlreduce/elimination/newton.hpp"
#include "nlreduce/elimination/reduced.hpp"
#include "nlreduce/elimination/scheduled.hpp"
#include "nlreduce/linalg/eigen.hpp"
#include "nlreduce/linalg/kernels.hpp"
#include "nlreduce/linalg/random.hpp"
#include "nlreduce/optim/alternating.hpp"
#include "nlreduce/optim/pgd_inexact.hpp"
#include "nlreduce/problems/logsumexp.hpp"
#include "nlreduce/problems/quadratic.hpp"

namespace nlreduce::bench {

namespace {

using linalg::Matrix;
using linalg::Rng;
using linalg::SymMatrix;
using linalg::Vector;
using problems::BlockPartition;

Vector random_vector(std::size_t n, Rng& rng) {
  Vector v(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) v[i] = rng.uniform(-1.0, 1.0);
  return v;
}

/// Random SPD matrix Q diag(l) Q^T with eigenvalues in [1, 100].
SymMatrix random_spd(std::size_t n, Rng& rng) {
  const Matrix q = linalg::random_orthogonal(n, rng);
  Vector l(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) l[i] = std::exp(rng.uniform(0.0, std::log(100.0)));
  return SymMatrix(q * Matrix::diagonal(l) * q.transpose());
}

BlockPartition random_partition(std::size_t n, std::size_t n_y, Rng& rng) {
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  for (std::size_t i = n - 1; i > 0; --i) {
    std::swap(idx[i], idx[rng.next_u64() % (i + 1)]);
  }
  std::vector<std::size_t> y(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n_y));
  std::vector<std::size_t> x(idx.begin() + static_cast<std::ptrdiff_t>(n_y), idx.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  return BlockPartition(n, std::move(x), std::move(y));
}

SelftestCase schur_bounds(Rng& rng) {
  SelftestCase c{"schur_eigenvalue_bounds", true, ""};
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 4 + rng.next_u64() % 17;
    const std::size_t n_y = 1 + rng.next_u64() % (n - 1);
    const SymMatrix a = random_spd(n, rng);
    const BlockPartition part = random_partition(n, n_y, rng);
    const problems::QuadraticProblem q(a, Vector(n, 0.0), 0.0, part);
    const problems::QuadraticBlocks b = q.blocks(part);
    const SymMatrix s(b.a11.matrix() - b.a12 * linalg::Cholesky(b.a22).solve(b.a21));
    const Vector la = linalg::sym_eigen(a).values;
    const Vector ls = linalg::sym_eigen(s).values;
    const double slack = 1e-9 * la[la.size() - 1];
    if (ls[0] < la[0] - slack || ls[ls.size() - 1] > la[la.size() - 1] + slack) {
      c.passed = false;
      c.detail = "instance " + std::to_string(t) + " violates the bounds";
      return c;
    }
  }
  c.detail = "20 instances";
  return c;
}

SelftestCase reduced_gradient_fd(Rng& rng) {
  SelftestCase c{"reduced_gradient_finite_difference", true, ""};
  const problems::LogSumExpProblem lse(30, 5);
  const BlockPartition part = lse.partition();
  elimination::NewtonOptions nopt;
  nopt.inner_tol = 1e-13;
  elimination::NewtonElimination inner(lse, part, nopt);
  elimination::FixedToleranceElimination map(inner, 1e-13, Vector(part.n_y(), 0.0));
  elimination::ReducedObjective reduced(lse, part, map);

  double worst = 0.0;
  for (int t = 0; t < 5; ++t) {
    const Vector x = random_vector(part.n_x(), rng);
    const Vector g = reduced.gradient(x);
    const Vector d = random_vector(part.n_x(), rng);
    const double h = 1e-5;
    const double fd = (reduced.value(x + h * d) - reduced.value(x - h * d)) / (2.0 * h);
    const double exact = linalg::dot(g, d);
    worst = std::max(worst, std::abs(fd - exact) / std::max(1e-12, std::abs(exact)));
  }
  c.passed = worst <= 1e-5;
  c.detail = "worst relative error " + format_real(worst);
  return c;
}

SelftestCase altmin_gauss_seidel(Rng& rng) {
  SelftestCase c{"altmin_block_gauss_seidel", true, ""};
  const std::size_t n = 12, n_y = 5;
  const SymMatrix a = random_spd(n, rng);
  const BlockPartition part = random_partition(n, n_y, rng);
  const Vector b = random_vector(n, rng);
  const problems::QuadraticProblem q(a, b, 0.0, part);
  const problems::QuadraticBlocks blk = q.blocks(part);

  optim::QuadraticBlockSolver xs(q, part.swapped());
  optim::QuadraticBlockSolver ys(q, part);
  optim::AltMinOptions opt;
  opt.stop.max_iter = 5;
  opt.stop.rel_grad_tol = 1e-300;
  opt.store_iterates = true;
  std::vector<Vector> iterates;
  try {
    iterates = optim::alternating_minimization(q, part, Vector(n, 0.0), xs, ys, opt).record.iterates();
  } catch (const optim::MaxIterReached& e) {
    iterates = e.record().iterates();
  }

  const linalg::Cholesky c11(blk.a11), c22(blk.a22);
  Vector x(part.n_x(), 0.0), y(n_y, 0.0);
  double worst = 0.0;
  for (std::size_t k = 1; k < iterates.size(); ++k) {
    x = c11.solve(blk.b1 - blk.a12 * y);
    y = c22.solve(blk.b2 - blk.a21 * x);
    worst = std::max(worst, linalg::norm_inf(iterates[k] - part.join(x, y)));
  }
  c.passed = iterates.size() == 6 && worst <= 1e-10;
  c.detail = "worst deviation " + format_real(worst);
  return c;
}

SelftestCase csv_roundtrip(Rng& rng) {
  SelftestCase c{"history_csv_roundtrip", true, ""};
  optim::ConvergenceRecord rec;
  for (int i = 0; i < 10; ++i) {
    rec.push(optim::IterationRow{i, rng.normal() * 1e10, std::abs(rng.normal()) * 1e-200,
                                 i == 0 ? 1.0 : rng.uniform01(), rng.uniform01() / 3.0,
                                 static_cast<long>(i * 3), static_cast<long>(i * 7), rng.uniform01()});
  }
  std::stringstream ss;
  write_history_csv(rec, ss);
  const optim::ConvergenceRecord back = parse_history_csv(ss);
  c.passed = back.rows() == rec.rows();
  c.detail = std::to_string(back.size()) + " rows";
  return c;
}

SelftestCase consistency_at_optimum() {
  SelftestCase c{"inexact_consistency_at_optimum", true, ""};
  problems::TestMatrixSpec spec;
  spec.n_x = 8;
  spec.n_y = 12;
  spec.spec_y = {1.0, 100.0};
  const problems::QuadraticProblem q = problems::build_test_matrix(spec);
  const BlockPartition part = q.partition();
  const linalg::Cholesky chol(q.a());
  const Vector z_star = chol.solve(q.b());

  elimination::NewtonElimination inner(q, part);
  const elimination::Elimination e = inner.solve(part.gather_x(z_star), part.gather_y(z_star), 1e-8);

  elimination::ScheduledInexactElimination sched(inner, part.gather_y(z_star));
  optim::InexactPgdOptions o;
  o.stop.abs_grad_tol = 1e-6 * linalg::norm2(q.grad_x(Vector(q.dim(), 0.0), part));
  const optim::InexactPgdResult r =
      optim::pgd_inexact(q, part, sched, part.gather_x(z_star), part.gather_y(z_star), o);
  c.passed = e.inner_iterations == 0 && r.record.iterations() <= 1;
  c.detail = "newton inner " + std::to_string(e.inner_iterations) + ", outer " +
             std::to_string(r.record.iterations());
  return c;
}

SelftestCase kernel_agreement(Rng& rng) {
  SelftestCase c{"serial_parallel_kernels", true, ""};
  const std::size_t n = 100000;
  std::vector<double> a(n), b(n);
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = rng.normal();
    b[i] = rng.normal();
  }
  const double ds = kernels::serial::dot(a, b);
  const double dp = kernels::parallel::dot(a, b);
  const double es = kernels::serial::sum_scaled_exp(a, b, 1.0);
  const double ep = kernels::parallel::sum_scaled_exp(a, b, 1.0);
  const double err = std::max(std::abs(ds - dp) / std::abs(ds), std::abs(es - ep) / std::abs(es));
  c.passed = err <= 1e-12;
  c.detail = "relative difference " + format_real(err) + ", threads " +
             std::to_string(kernels::max_threads());
  return c;
}

}  // namespace

std::vector<SelftestCase> run_selftest(std::uint64_t seed) {
  Rng rng(seed);
  std::vector<SelftestCase> out;
  auto guarded = [&out](const char* name, auto&& fn) {
    try {
      out.push_back(fn());
    } catch (const std::exception& e) {
      out.push_back(SelftestCase{name, false, e.what()});
    }
  };
  guarded("schur_eigenvalue_bounds", [&] { return schur_bounds(rng); });
  guarded("reduced_gradient_finite_difference", [&] { return reduced_gradient_fd(rng); });
  guarded("altmin_block_gauss_seidel", [&] { return altmin_gauss_seidel(rng); });
  guarded("history_csv_roundtrip", [&] { return csv_roundtrip(rng); });
  guarded("inexact_consistency_at_optimum", [&] { return consistency_at_optimum(); });
  guarded("serial_parallel_kernels", [&] { return kernel_agreement(rng); });
  return out;
}

}  // namespace nlreduce::bench
