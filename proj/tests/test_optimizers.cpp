#include <doctest.h>

#include <cmath>
#include <random>

#include "nlreduce/elimination/exact.hpp"
#include "nlreduce/elimination/newton.hpp"
#include "nlreduce/elimination/reduced.hpp"
#include "nlreduce/elimination/scheduled.hpp"
#include "nlreduce/error.hpp"
#include "nlreduce/optim/alternating.hpp"
#include "nlreduce/optim/gradient_descent.hpp"
#include "nlreduce/optim/line_search.hpp"
#include "nlreduce/optim/newton_eliminated.hpp"
#include "nlreduce/optim/pgd_inexact.hpp"
#include "nlreduce/optim/rate_bound.hpp"
#include "nlreduce/problems/logsumexp.hpp"
#include "nlreduce/problems/quadratic.hpp"
#include "support/oracles.hpp"

using namespace nlreduce;
using linalg::LinOp;
using linalg::SymMatrix;
using linalg::Vector;
using problems::BlockPartition;
using problems::LogSumExpProblem;
using problems::QuadraticProblem;

namespace {

void check_monotone(const optim::ConvergenceRecord& r) {
  for (std::size_t k = 1; k < r.size(); ++k) {
    const double prev = r.rows()[k - 1].fval;
    CHECK(r.rows()[k].fval <= prev + 1e-12 * std::abs(prev));
  }
}

/// Inner solver decorator that checks every returned y against its tolerance.
class CheckedInner final : public elimination::InnerSolver {
 public:
  explicit CheckedInner(elimination::InnerSolver& inner) : inner_(inner) {}
  elimination::Elimination solve(const Vector& x, const Vector& y0, double tol) override {
    elimination::Elimination e = inner_.solve(x, y0, tol);
    if (e.residual > tol) ++violations;
    ++calls;
    work_ = inner_.work();
    return e;
  }
  int violations = 0;
  int calls = 0;

 private:
  elimination::InnerSolver& inner_;
};

optim::GdOptions optimal_opts() {
  optim::GdOptions o;
  o.step = optim::StepMode::optimal_quadratic;
  return o;
}

optim::ArmijoParams lse_armijo() {
  optim::ArmijoParams p;
  p.t0 = 80.0;
  return p;
}

}  // namespace

TEST_CASE("optimal_step_quadratic examples") {
  CHECK(optim::optimal_step_quadratic(Vector{3.0, -1.0}, LinOp::identity(2)) == 1.0);
  const SymMatrix d2 = SymMatrix::diagonal(Vector{2.0, 2.0});
  CHECK(optim::optimal_step_quadratic(Vector{1.0, 1.0}, LinOp::view(d2)) == 0.5);
  const SymMatrix d3 = SymMatrix::diagonal(Vector{1.0, 1000.0});
  CHECK(optim::optimal_step_quadratic(Vector{1.0, 1.0}, LinOp::view(d3)) == doctest::Approx(2.0 / 1001.0));
  const SymMatrix neg = SymMatrix::diagonal(Vector{-1.0, -1.0});
  CHECK_THROWS_AS(optim::optimal_step_quadratic(Vector{1.0, 1.0}, LinOp::view(neg)), DegenerateCurvature);
  CHECK_THROWS_AS(optim::optimal_step_quadratic(Vector{0.0, 0.0}, LinOp::identity(2)), std::invalid_argument);
}

TEST_CASE("armijo_search examples") {
  const auto half_sq = [](const Vector& v) { return 0.5 * v[0] * v[0]; };
  const optim::LineSearchResult r = optim::armijo_search(half_sq, Vector{1.0}, Vector{-1.0}, Vector{1.0}, {});
  CHECK(r.t == 1.0);
  CHECK(r.value == 0.0);
  CHECK(r.trials == 1);

  optim::ArmijoParams p;
  p.t0 = 7.0;
  const auto linear = [](const Vector& v) { return -3.0 * v[0]; };
  CHECK(optim::armijo_search(linear, Vector{0.0}, Vector{1.0}, Vector{-3.0}, p).t == 7.0);

  CHECK_THROWS_AS(optim::armijo_search(half_sq, Vector{1.0}, Vector{1.0}, Vector{1.0}, {}), std::invalid_argument);
  CHECK_THROWS_AS(optim::armijo_search(half_sq, Vector{1.0}, Vector{0.0}, Vector{1.0}, {}), std::invalid_argument);

  // Backtracks to the first acceptable power of the shrink factor.
  const auto quartic = [](const Vector& v) { return v[0] * v[0] * v[0] * v[0]; };
  const optim::LineSearchResult q = optim::armijo_search(quartic, Vector{1.0}, Vector{-4.0}, Vector{4.0}, {});
  CHECK(q.t == 0.25);
  CHECK(q.trials == 3);

  // A gradient that lies about the slope can never be satisfied.
  optim::ArmijoParams few;
  few.max_trials = 5;
  try {
    optim::armijo_search(half_sq, Vector{1.0}, Vector{1.0}, Vector{-1.0}, few);
    FAIL("expected LineSearchFailure");
  } catch (const LineSearchFailure& e) {
    CHECK(e.trials() == 5);
    CHECK(e.last_value() == doctest::Approx(0.5 * (1.0 + 1.0 / 16.0) * (1.0 + 1.0 / 16.0)));
  }
  optim::ArmijoParams bad;
  bad.c1 = 1.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("gradient descent on A = I converges in one optimal step") {
  const QuadraticProblem q(SymMatrix::identity(4), Vector{1.0, 2.0, 3.0, 4.0}, 0.0, BlockPartition::trailing(4, 1));
  problems::ObjectiveFunction f(q);
  std::mt19937_64 gen(1);
  for (int t = 0; t < 5; ++t) {
    const optim::OptimResult r = optim::gradient_descent(f, oracle::to_vector(5.0 * oracle::random_vec(4, gen)), optimal_opts());
    CHECK(r.record.iterations() == 1);
    CHECK(linalg::norm2(r.x - q.b()) <= 1e-14);
    CHECK(r.record.rows()[1].step == 1.0);
  }
}

TEST_CASE("gradient descent record and stopping") {
  problems::TestMatrixSpec spec;
  spec.n_x = 10;
  spec.n_y = 10;
  const QuadraticProblem q = problems::build_test_matrix(spec);
  problems::ObjectiveFunction f(q);
  const optim::OptimResult r = optim::gradient_descent(f, Vector(20, 0.0), optimal_opts());
  const auto& rows = r.record.rows();
  CHECK(rows[0].iter == 0);
  CHECK(rows[0].rel_grad_norm == 1.0);
  CHECK(rows.back().rel_grad_norm <= 1e-6);
  for (std::size_t k = 0; k + 1 < rows.size(); ++k) {
    CHECK(rows[k].rel_grad_norm > 1e-6);
    CHECK(rows[k + 1].iter == static_cast<int>(k + 1));
    CHECK(rows[k + 1].elapsed_s >= rows[k].elapsed_s);
  }
  check_monotone(r.record);
  CHECK(linalg::norm2(q.gradient(r.x)) == doctest::Approx(rows.back().grad_norm));

  optim::GdOptions o = optimal_opts();
  o.stop.max_iter = 3;
  o.store_iterates = true;
  try {
    optim::gradient_descent(f, Vector(20, 0.0), o);
    FAIL("expected MaxIterReached");
  } catch (const optim::MaxIterReached& e) {
    CHECK(e.record().iterations() == 3);
    CHECK(e.record().iterates().size() == 4);
    CHECK(e.x() == e.record().iterates().back());
  }

  int calls = 0;
  o.stop.max_iter = 10000;
  o.on_iteration = [&](const optim::IterationRow& row, const Vector&) { CHECK(row.iter == ++calls); };
  const optim::OptimResult again = optim::gradient_descent(f, Vector(20, 0.0), o);
  CHECK(calls == again.record.iterations());
  CHECK_THROWS_AS(optim::gradient_descent(f, Vector{1.0, NAN}, o), DimensionMismatch);
  Vector nan_start(20, 0.0);
  nan_start[3] = NAN;
  CHECK_THROWS_AS(optim::gradient_descent(f, nan_start, o), std::invalid_argument);
}

TEST_CASE("benchmark quadratic: GD versus PGD") {
  problems::TestMatrixSpec spec;
  const QuadraticProblem q = problems::build_test_matrix(spec);
  problems::ObjectiveFunction f(q);
  const optim::OptimResult gd = optim::gradient_descent(f, Vector(100, 0.0), optimal_opts());
  elimination::QuadraticExactElimination map(q, q.partition());
  elimination::ReducedObjective reduced(q, q.partition(), map);
  const optim::OptimResult pgd = optim::gradient_descent(reduced, Vector(40, 0.0), optimal_opts());
  CHECK(gd.record.iterations() >= 1500);
  CHECK(gd.record.iterations() <= 9000);
  CHECK(pgd.record.iterations() <= 100);
  check_monotone(gd.record);
  check_monotone(pgd.record);
  // Each PGD step evaluates h once at the new point and applies S once.
  CHECK(pgd.record.back().cum_linear_solves == 2 * pgd.record.iterations() + 1);
}

TEST_CASE("PGD needs no more iterations than GD on random quadratics") {
  // Random instances of the block-spectrum family: well-conditioned x-block,
  // stiff y-block, small coupling.
  std::mt19937_64 gen(3);
  std::uniform_int_distribution<std::size_t> dim(5, 60);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int t = 0; t < 20; ++t) {
    problems::TestMatrixSpec spec;
    spec.n_x = dim(gen);
    spec.n_y = dim(gen);
    spec.spec_x = {1.0, std::pow(10.0, 0.5 + unit(gen))};
    spec.spec_y = {1.0, std::pow(10.0, 2.0 + unit(gen))};
    spec.coupling_eps = std::pow(10.0, -3.0 + 2.0 * unit(gen));
    spec.seed = gen();
    const QuadraticProblem q = problems::build_test_matrix(spec);
    const std::size_t n = spec.n_x + spec.n_y;
    problems::ObjectiveFunction f(q);
    elimination::QuadraticExactElimination map(q, q.partition());
    elimination::ReducedObjective reduced(q, q.partition(), map);
    const int gd = optim::gradient_descent(f, Vector(n, 0.0), optimal_opts()).record.iterations();
    const optim::OptimResult pgd = optim::gradient_descent(reduced, Vector(spec.n_x, 0.0), optimal_opts());
    CHECK(pgd.record.iterations() <= gd);
    check_monotone(pgd.record);
  }
}

TEST_CASE("rate bound examples") {
  SUBCASE("kappa = 1") {
    const QuadraticProblem q(SymMatrix::identity(3), Vector{1.0, -1.0, 2.0}, 0.0, BlockPartition::trailing(3, 1));
    problems::ObjectiveFunction f(q);
    optim::GdOptions o = optimal_opts();
    o.store_iterates = true;
    const optim::OptimResult r = optim::gradient_descent(f, Vector{4.0, 4.0, 4.0}, o);
    CHECK(optim::check_rate_bound(r.record, 1.0, q.b()));
  }
  SUBCASE("benchmark quadratic, GD with kappa(A) and PGD with kappa(S)") {
    problems::TestMatrixSpec spec;
    spec.seed = 2;
    const QuadraticProblem q = problems::build_test_matrix(spec);
    const oracle::Mat a = oracle::to_eigen(q.a());
    const oracle::Vec b = oracle::to_eigen(q.b());
    const oracle::Vec z_star = oracle::direct_solve(a, b);
    const oracle::Blocks blocks = oracle::split(a, b, q.partition());
    const double kappa_a = oracle::kappa(a);
    const double kappa_s = oracle::kappa(oracle::dense_schur(blocks));

    optim::GdOptions o = optimal_opts();
    o.store_iterates = true;
    problems::ObjectiveFunction f(q);
    const optim::OptimResult gd = optim::gradient_descent(f, Vector(100, 0.0), o);
    const optim::RateBoundReport rep = optim::rate_bound_report(gd.record.iterates(), kappa_a, oracle::to_vector(z_star));
    CHECK(rep.holds);
    CHECK(rep.worst_ratio <= 1.0);

    elimination::QuadraticExactElimination map(q, q.partition());
    elimination::ReducedObjective reduced(q, q.partition(), map);
    const optim::OptimResult pgd = optim::gradient_descent(reduced, Vector(40, 0.0), o);
    const Vector x_star = q.partition().gather_x(oracle::to_vector(z_star));
    CHECK(optim::check_rate_bound(pgd.record, kappa_s, x_star));
    // The GD bound with kappa(S) is violated by full-space GD.
    CHECK_FALSE(optim::check_rate_bound(gd.record, kappa_s, oracle::to_vector(z_star)));
  }
  CHECK_THROWS_AS(optim::rate_bound_report({}, 0.5, Vector{}), std::invalid_argument);
}

TEST_CASE("log-sum-exp: PGD with exact elimination") {
  const LogSumExpProblem p(1000, 20);
  elimination::NewtonOptions no;
  no.inner_tol = 1e-11;
  elimination::NewtonElimination newton(p, p.partition(), no);
  elimination::FixedToleranceElimination map(newton, 1e-11, Vector(20, 0.0));
  elimination::ReducedObjective reduced(p, p.partition(), map);
  optim::GdOptions o;
  o.armijo = lse_armijo();
  const optim::OptimResult r = optim::gradient_descent(reduced, Vector(980, 0.0), o);
  CHECK(r.record.iterations() <= 15);
  check_monotone(r.record);

  problems::ObjectiveFunction f(p);
  const optim::OptimResult gd = optim::gradient_descent(f, Vector(1000, 0.0), o);
  CHECK(gd.record.iterations() >= 300);
  CHECK(gd.record.iterations() <= 1500);
  check_monotone(gd.record);
}

TEST_CASE("pgd_inexact examples") {
  SUBCASE("log-sum-exp sweep") {
    for (std::size_t n_el : {10, 50, 200, 400}) {
      const LogSumExpProblem p(1000, n_el);
      elimination::NewtonElimination newton(p, p.partition());
      CheckedInner checked(newton);
      elimination::ScheduledInexactElimination sched(checked, Vector(n_el, 0.0));
      optim::InexactPgdOptions o;
      o.armijo = lse_armijo();
      const optim::InexactPgdResult r = optim::pgd_inexact(p, p.partition(), sched, Vector(1000 - n_el, 0.0),
                                                           Vector(n_el, 0.0), o);
      CHECK(r.record.iterations() <= 20);
      CHECK(checked.violations == 0);
      CHECK(r.record.back().rel_grad_norm <= 1e-6);
      const Vector z = p.partition().join(r.x, r.y);
      CHECK(linalg::norm2(p.grad_y(z, p.partition())) == doctest::Approx(r.y_residual));
      CHECK(r.y_residual <= std::max(sched.floor(), sched.tolerance()));
      CHECK(r.y_residual <= 1e-6 * r.record.rows()[0].grad_norm);
    }
  }
  SUBCASE("quadratic with inner Newton behaves as exact PGD") {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      problems::TestMatrixSpec spec;
      spec.seed = seed;
      const QuadraticProblem q = problems::build_test_matrix(spec);
      elimination::QuadraticExactElimination map(q, q.partition());
      elimination::ReducedObjective reduced(q, q.partition(), map);
      optim::GdOptions go;
      const int exact = optim::gradient_descent(reduced, Vector(40, 0.0), go).record.iterations();

      elimination::NewtonElimination newton(q, q.partition());
      elimination::ScheduledInexactElimination sched(newton, Vector(60, 0.0));
      optim::InexactPgdOptions o;
      const optim::InexactPgdResult r = optim::pgd_inexact(q, q.partition(), sched, Vector(40, 0.0), Vector(60, 0.0), o);
      CHECK(std::abs(r.record.iterations() - exact) <= 2);
      check_monotone(r.record);
    }
  }
  SUBCASE("start at the optimum") {
    problems::TestMatrixSpec spec;
    const QuadraticProblem q = problems::build_test_matrix(spec);
    const BlockPartition part = q.partition();
    const Vector z_star = oracle::to_vector(oracle::direct_solve(oracle::to_eigen(q.a()), oracle::to_eigen(q.b())));
    const double g0_ref = linalg::norm2(q.grad_x(Vector(100, 0.0), part));

    elimination::NewtonElimination newton(q, part);
    elimination::ScheduledInexactElimination sched(newton, part.gather_y(z_star));
    optim::InexactPgdOptions o;
    o.stop.abs_grad_tol = 1e-6 * g0_ref;
    const optim::InexactPgdResult r =
        optim::pgd_inexact(q, part, sched, part.gather_x(z_star), part.gather_y(z_star), o);
    CHECK(r.record.iterations() <= 1);
    CHECK(r.record.rows()[0].inner_iters == 0);
  }
  SUBCASE("tolerance schedule follows accepted steps") {
    const LogSumExpProblem p(300, 30);
    elimination::NewtonElimination newton(p, p.partition());
    elimination::ScheduledInexactElimination sched(newton, Vector(30, 0.0));
    optim::InexactPgdOptions o;
    o.armijo = lse_armijo();
    std::vector<double> tols;
    o.on_iteration = [&](const optim::IterationRow&, const Vector&) { tols.push_back(sched.tolerance()); };
    const optim::InexactPgdResult r = optim::pgd_inexact(p, p.partition(), sched, Vector(270, 0.0), Vector(30, 0.0), o);
    REQUIRE(!tols.empty());
    double expected = 1e-3;
    for (double t : tols) {
      expected = std::max(sched.floor(), 0.5 * expected);
      CHECK(t <= expected * (1.0 + 1e-15));
    }
    CHECK(sched.floor() == doctest::Approx(1e-2 * 1e-6 * r.record.rows()[0].grad_norm));
  }
}

TEST_CASE("inexact PGD at the floor contracts like exact PGD") {
  const LogSumExpProblem p(1000, 50);
  const BlockPartition part = p.partition();
  const double rel_tol = 1e-7;

  elimination::NewtonOptions tight;
  tight.inner_tol = 1e-14;
  elimination::NewtonElimination exact_newton(p, part, tight);
  elimination::FixedToleranceElimination map(exact_newton, 1e-14, Vector(50, 0.0));
  elimination::ReducedObjective reduced(p, part, map);
  optim::GdOptions go;
  go.armijo = lse_armijo();
  go.stop.rel_grad_tol = rel_tol;
  const optim::OptimResult ex = optim::gradient_descent(reduced, Vector(950, 0.0), go);

  // Start the schedule at the floor the outer loop will install.
  optim::InexactPgdOptions o;
  o.armijo = lse_armijo();
  o.stop.rel_grad_tol = rel_tol;
  o.store_iterates = true;
  const double floor = o.floor_fraction * rel_tol * ex.record.rows()[0].grad_norm;
  elimination::NewtonElimination newton(p, part);
  elimination::ScheduledInexactElimination sched(newton, Vector(50, 0.0), {floor, 0.5, 0.0});
  const optim::InexactPgdResult in = optim::pgd_inexact(p, part, sched, Vector(950, 0.0), Vector(50, 0.0), o);
  CHECK(sched.floor() == doctest::Approx(floor));

  // True reduced gradient norms along the inexact iterates.
  std::vector<double> r_in;
  for (const Vector& x : in.record.iterates()) r_in.push_back(linalg::norm2(reduced.gradient(x)));
  REQUIRE(r_in.size() >= 5);
  REQUIRE(ex.record.size() >= 5);
  const auto rate = [](double last, double first) { return std::pow(last / first, 0.25); };
  const std::size_t ni = r_in.size(), ne = ex.record.size();
  const double q_in = rate(r_in[ni - 1], r_in[ni - 5]);
  const double q_ex = rate(ex.record.rows()[ne - 1].grad_norm, ex.record.rows()[ne - 5].grad_norm);
  CHECK(q_in <= 2.0 * q_ex);
  CHECK(q_ex <= 2.0 * q_in);
}

TEST_CASE("alternating minimization examples") {
  SUBCASE("block Gauss-Seidel oracle") {
    std::mt19937_64 gen(5);
    for (int t = 0; t < 10; ++t) {
      const std::size_t n = 4 + gen() % 17;
      const std::size_t n_y = 1 + gen() % (n - 1);
      const oracle::Mat a = oracle::random_spd(n, gen, 1.0, 50.0);
      const oracle::Vec b = oracle::random_vec(n, gen);
      const BlockPartition p = oracle::random_partition(n, n_y, gen);
      const QuadraticProblem q(oracle::to_sym(a), oracle::to_vector(b), 0.0, p);
      optim::QuadraticBlockSolver xs(q, p.swapped()), ys(q, p);
      optim::AltMinOptions o;
      o.store_iterates = true;
      o.stop.rel_grad_tol = 1e-10;
      const oracle::Vec z0 = oracle::random_vec(n, gen);
      const optim::AltMinResult r = optim::alternating_minimization(q, p, oracle::to_vector(z0), xs, ys, o);
      const auto& it = r.record.iterates();
      const std::vector<oracle::Vec> gs = oracle::block_gauss_seidel(a, b, p, z0, static_cast<int>(it.size()) - 1);
      for (std::size_t k = 0; k < it.size(); ++k) {
        CHECK((oracle::to_eigen(it[k]) - gs[k]).lpNorm<Eigen::Infinity>() <= 1e-10);
      }
      check_monotone(r.record);
      for (std::size_t k = 1; k < r.half_sweep_values.size(); ++k) {
        const double prev = r.half_sweep_values[k - 1];
        CHECK(r.half_sweep_values[k] <= prev + 1e-12 * std::abs(prev));
      }
      CHECK(r.half_sweep_values.size() == 2 * static_cast<std::size_t>(r.record.iterations()) + 1);
    }
  }
  SUBCASE("block-diagonal A converges in one sweep") {
    const QuadraticProblem q(SymMatrix::diagonal(Vector{1.0, 5.0, 2.0, 9.0}), Vector{1.0, 1.0, 1.0, 1.0}, 0.0,
                             BlockPartition(4, {0, 2}, {1, 3}));
    optim::QuadraticBlockSolver xs(q, q.partition().swapped()), ys(q, q.partition());
    const optim::AltMinResult r =
        optim::alternating_minimization(q, q.partition(), Vector{3.0, 3.0, 3.0, 3.0}, xs, ys, {});
    CHECK(r.record.iterations() == 1);
    CHECK(linalg::norm2(r.z - Vector{1.0, 0.2, 0.5, 1.0 / 9.0}) <= 1e-14);
  }
  SUBCASE("log-sum-exp with Newton block solvers") {
    const LogSumExpProblem p(500, 20);
    elimination::NewtonElimination xs(p, p.partition().swapped()), ys(p, p.partition());
    const optim::AltMinResult r = optim::alternating_minimization(p, p.partition(), Vector(500, 0.0), xs, ys, {});
    CHECK(r.record.back().rel_grad_norm <= 1e-6);
    check_monotone(r.record);
    for (std::size_t k = 1; k < r.half_sweep_values.size(); ++k) {
      CHECK(r.half_sweep_values[k] <= r.half_sweep_values[k - 1] + 1e-12 * std::abs(r.half_sweep_values[k - 1]));
    }
  }
}

TEST_CASE("newton_eliminated examples") {
  SUBCASE("quadratic converges in one step") {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      problems::TestMatrixSpec spec;
      spec.seed = seed;
      const QuadraticProblem q = problems::build_test_matrix(spec);
      elimination::QuadraticExactElimination map(q, q.partition());
      const optim::OptimResult r = optim::newton_eliminated(q, q.partition(), map, Vector(40, 0.0), {});
      CHECK(r.record.iterations() == 1);
      CHECK(r.record.rows()[1].step == 1.0);
    }
  }
  SUBCASE("log-sum-exp converges superlinearly") {
    const LogSumExpProblem p(1000, 20);
    elimination::NewtonOptions no;
    no.inner_tol = 1e-13;
    elimination::NewtonElimination newton(p, p.partition(), no);
    elimination::FixedToleranceElimination map(newton, 1e-13, Vector(20, 0.0));
    optim::NewtonElimOptions o;
    const optim::OptimResult r = optim::newton_eliminated(p, p.partition(), map, Vector(980, 0.0), o);
    const auto& rows = r.record.rows();
    REQUIRE(rows.size() >= 3);
    const std::size_t m = rows.size();
    for (std::size_t k = m - 2; k < m; ++k) {
      const double ratio = rows[k].grad_norm / (rows[k - 1].grad_norm * rows[k - 1].grad_norm);
      CHECK(ratio <= 1.0);
      CHECK(rows[k].grad_norm < 0.1 * rows[k - 1].grad_norm);
    }
    check_monotone(r.record);
  }
}
