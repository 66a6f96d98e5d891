// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "nlreduce/bench/experiment.hpp"
#include "nlreduce/elimination/exact.hpp"
#include "nlreduce/elimination/newton.hpp"
#include "nlreduce/elimination/reduced.hpp"
#include "nlreduce/elimination/scheduled.hpp"
#include "nlreduce/optim/alternating.hpp"
#include "nlreduce/optim/gradient_descent.hpp"
#include "nlreduce/optim/newton_eliminated.hpp"
#include "nlreduce/optim/pgd_inexact.hpp"
#include "nlreduce/optim/rate_bound.hpp"
#include "nlreduce/problems/logsumexp.hpp"
#include "nlreduce/problems/quadratic.hpp"
#include "support/oracles.hpp"

using namespace nlreduce;
using bench::ExperimentConfig;
using bench::Method;
using bench::RunStatus;
using linalg::Vector;
using problems::BlockPartition;
using problems::LogSumExpProblem;
using problems::QuadraticProblem;

namespace {

constexpr std::uint64_t kSeeds[] = {1, 2, 3, 4, 5};

/// Collects failed conditions; the first few are kept as the detail text.
struct Verdict {
  int failures = 0;
  std::ostringstream why;
  std::ostringstream info;

  void expect(bool ok, const std::string& what) {
    if (ok) return;
    if (failures < 4) why << (failures ? "; " : "") << what;
    ++failures;
  }
};

template <class... T>
std::string fmt(const char* f, T... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

ExperimentConfig quadratic_cfg(std::uint64_t seed, Method m) {
  ExperimentConfig c;
  c.quadratic.seed = seed;
  c.method = m;
  c.history.clear();
  c.run_log.clear();
  return c;
}

ExperimentConfig lse_cfg(std::size_t n_el, Method m) {
  ExperimentConfig c;
  c.problem = bench::ProblemKind::logsumexp;
  c.lse_n_el = n_el;
  c.method = m;
  c.history.clear();
  c.run_log.clear();
  return c;
}

optim::GdOptions optimal_gd(bool store) {
  optim::GdOptions o;
  o.step = optim::StepMode::optimal_quadratic;
  o.store_iterates = store;
  return o;
}

struct RandomQuadratic {
  oracle::Mat a;
  oracle::Vec b;
  BlockPartition part;
  QuadraticProblem problem;
};

RandomQuadratic random_quadratic(std::size_t n, std::size_t n_y, std::mt19937_64& gen, double hi) {
  oracle::Mat a = oracle::random_spd(n, gen, 1.0, hi);
  oracle::Vec b = oracle::random_vec(n, gen);
  BlockPartition part = oracle::random_partition(n, n_y, gen);
  QuadraticProblem q(oracle::to_sym(a), oracle::to_vector(b), 0.0, part);
  return {std::move(a), std::move(b), part, std::move(q)};
}

void ac1(Verdict& v) {
  const auto t0 = std::chrono::steady_clock::now();
  double worst_speedup = 1e300;
  for (std::uint64_t s : kSeeds) {
    const bench::RunResult gd = bench::run_experiment(quadratic_cfg(s, Method::gd), false);
    const bench::RunResult pgd = bench::run_experiment(quadratic_cfg(s, Method::pgd_exact), false);
    const int g = gd.summary.iterations, p = pgd.summary.iterations;
    v.expect(gd.summary.status == RunStatus::converged && pgd.summary.status == RunStatus::converged,
             fmt("seed %d did not converge", int(s)));
    v.expect(g >= 1500 && g <= 9000, fmt("seed %d GD %d outside [1500, 9000]", int(s), g));
    v.expect(p <= 100, fmt("seed %d PGD %d > 100", int(s), p));
    const double speedup = double(g) / std::max(p, 1);
    v.expect(speedup >= 20.0, fmt("seed %d speedup %.1f < 20", int(s), speedup));
    worst_speedup = std::min(worst_speedup, speedup);
    v.info << fmt("s%d gd=%d pgd=%d ", int(s), g, p);
  }
  const double t = seconds_since(t0);
  v.expect(t <= 10.0, fmt("runtime %.2f s > 10 s", t));
  v.info << fmt("min speedup %.1fx, %.2f s", worst_speedup, t);
}

void ac2(Verdict& v) {
  for (std::uint64_t s : kSeeds) {
    const int g = bench::run_experiment(quadratic_cfg(s, Method::gd), false).summary.iterations;
    ExperimentConfig partial = quadratic_cfg(s, Method::pgd_exact);
    partial.n_r = 50;
    const int p = bench::run_experiment(partial, false).summary.iterations;
    v.expect(p < g, fmt("seed %d partial PGD %d >= GD %d", int(s), p, g));

    const bench::ConditioningReport full = bench::conditioning_report(quadratic_cfg(s, Method::pgd_exact));
    const bench::ConditioningReport part = bench::conditioning_report(partial);
    const double slack = 1e-9;
    v.expect(full.kappa_a * (1 + slack) >= part.kappa_s, fmt("seed %d kappa(A) < kappa(S_partial)", int(s)));
    v.expect(part.kappa_s * (1 + slack) >= full.kappa_s, fmt("seed %d kappa(S_partial) < kappa(S_full)", int(s)));

    // Independent dense oracle for the partial Schur complement.
    const QuadraticProblem q = problems::build_test_matrix(partial.quadratic);
    const BlockPartition scope = bench::scope_partition(q.partition(), 50);
    const oracle::Mat a = oracle::to_eigen(q.a());
    const double ks = oracle::kappa(oracle::dense_schur(oracle::split(a, oracle::to_eigen(q.b()), scope)));
    v.expect(std::abs(ks - part.kappa_s) <= 1e-6 * ks, fmt("seed %d kappa(S_partial) disagrees with oracle", int(s)));
    v.info << fmt("s%d gd=%d pgd=%d kS=%.1f ", int(s), g, p, part.kappa_s);
  }
}

void ac3(Verdict& v) {
  for (std::uint64_t s : kSeeds) {
    problems::TestMatrixSpec spec;
    spec.seed = s;
    const QuadraticProblem q = problems::build_test_matrix(spec);
    const oracle::Blocks k = oracle::split(oracle::to_eigen(q.a()), oracle::to_eigen(q.b()), q.partition());
    const double ka = oracle::kappa(oracle::to_eigen(q.a()));
    const double k11 = oracle::kappa(k.a11);
    const double kss = oracle::kappa(oracle::dense_schur(k));
    v.expect(ka >= 950.0 && ka <= 1050.0, fmt("seed %d kappa(A) = %.3f", int(s), ka));
    v.expect(std::abs(k11 - 10.0) <= 1e-6, fmt("seed %d kappa(A11) = %.9f", int(s), k11));
    v.expect(std::abs(kss - k11) <= 0.05 * k11, fmt("seed %d kappa(S) = %.4f", int(s), kss));

    const bench::ConditioningReport r = bench::conditioning_report(quadratic_cfg(s, Method::pgd_exact));
    v.expect(std::abs(r.kappa_a - ka) <= 1e-6 * ka && std::abs(r.kappa_s - kss) <= 1e-6 * kss,
             fmt("seed %d report disagrees with oracle", int(s)));
    v.info << fmt("s%d kA=%.1f kA11=%.6f kS=%.4f ", int(s), ka, k11, kss);
  }
}

void ac4(Verdict& v) {
  const auto t0 = std::chrono::steady_clock::now();
  const bench::RunResult pgd = bench::run_experiment(lse_cfg(20, Method::pgd_exact), false);
  const bench::RunResult gd = bench::run_experiment(lse_cfg(20, Method::gd), false);
  const double t = seconds_since(t0);
  const int p = pgd.summary.iterations, g = gd.summary.iterations;
  v.expect(pgd.summary.status == RunStatus::converged && gd.summary.status == RunStatus::converged,
           "run did not converge");
  v.expect(p <= 15, fmt("PGD %d > 15", p));
  v.expect(g >= 300 && g <= 1500, fmt("GD %d outside [300, 1500]", g));
  v.expect(t <= 30.0, fmt("runtime %.2f s > 30 s", t));
  v.info << fmt("gd=%d pgd=%d, %.2f s", g, p, t);
}

void ac5(Verdict& v) {
  ExperimentConfig base = lse_cfg(20, Method::gd);
  const bench::Table1 t = bench::run_table1_sweep(base, {10, 50, 200, 400}, "");
  for (std::size_t j = 0; j < t.n_el.size(); ++j) {
    const bench::RunSummary& g = t.cells[0][j];
    const bench::RunSummary& e = t.cells[1][j];
    const bench::RunSummary& i = t.cells[2][j];
    const int n = int(t.n_el[j]);
    v.expect(g.status == RunStatus::converged && e.status == RunStatus::converged &&
                 i.status == RunStatus::converged,
             fmt("n_el %d: a cell did not converge", n));
    v.expect(e.iterations <= 20, fmt("n_el %d PGD-exact %d > 20", n, e.iterations));
    v.expect(i.iterations <= 20, fmt("n_el %d PGD-inexact %d > 20", n, i.iterations));
    v.expect(std::abs(e.iterations - i.iterations) <= 10, fmt("n_el %d exact/inexact differ by > 10", n));
    v.expect(g.iterations >= 300 && g.iterations <= 1500, fmt("n_el %d GD %d outside [300, 1500]", n, g.iterations));
    v.info << fmt("n_el=%d gd=%d ex=%d in=%d ", n, g.iterations, e.iterations, i.iterations);
  }
}

void ac6(Verdict& v) {
  std::mt19937_64 gen(606);
  double worst_hvp = 0.0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 2 + gen() % 39;
    const std::size_t n_y = 1 + gen() % (n - 1);
    const RandomQuadratic rq = random_quadratic(n, n_y, gen, std::pow(10.0, 1.0 + 3.0 * (gen() % 1000) / 1000.0));
    const oracle::Mat s = oracle::dense_schur(oracle::split(rq.a, rq.b, rq.part));
    const oracle::Vec la = oracle::eigenvalues(rq.a), ls = oracle::eigenvalues(s);
    const double slack = 1e-9 * la(la.size() - 1);
    const bool ok = la(0) <= ls(0) + slack && ls(0) <= ls(ls.size() - 1) + slack &&
                    ls(ls.size() - 1) <= la(la.size() - 1) + slack;
    v.expect(ok, fmt("instance %d violates the eigenvalue interlacing", t));

    const oracle::Vec x = oracle::random_vec(n - n_y, gen);
    const oracle::Vec mf = oracle::to_eigen(elimination::reduced_hvp_quadratic(rq.problem, rq.part, oracle::to_vector(x)));
    const oracle::Vec dense = s * x;
    const double err = (mf - dense).norm() / dense.norm();
    worst_hvp = std::max(worst_hvp, err);
    v.expect(err <= 1e-8, fmt("instance %d matrix-free Schur error %.2e", t, err));
  }
  v.info << fmt("100 instances, worst matrix-free rel error %.2e", worst_hvp);
}

void ac7(Verdict& v) {
  std::mt19937_64 gen(707);
  double worst_gd = 0.0, worst_pgd = 0.0;
  for (int t = 0; t < 10; ++t) {
    const std::size_t n = 10 + gen() % 31;
    const std::size_t n_y = 1 + gen() % (n - 1);
    const RandomQuadratic rq = random_quadratic(n, n_y, gen, 200.0);
    const oracle::Vec z_star = oracle::direct_solve(rq.a, rq.b);
    const double ka = oracle::kappa(rq.a);
    const double ks = oracle::kappa(oracle::dense_schur(oracle::split(rq.a, rq.b, rq.part)));

    problems::ObjectiveFunction f(rq.problem);
    const optim::OptimResult gd = optim::gradient_descent(f, Vector(n, 0.0), optimal_gd(true));
    const optim::RateBoundReport rg =
        optim::rate_bound_report(gd.record.iterates(), ka, oracle::to_vector(z_star), 1.0 + 1e-8);

    elimination::QuadraticExactElimination map(rq.problem, rq.part);
    elimination::ReducedObjective reduced(rq.problem, rq.part, map);
    const optim::OptimResult pgd = optim::gradient_descent(reduced, Vector(n - n_y, 0.0), optimal_gd(true));
    const Vector x_star = rq.part.gather_x(oracle::to_vector(z_star));
    const optim::RateBoundReport rp = optim::rate_bound_report(pgd.record.iterates(), ks, x_star, 1.0 + 1e-8);

    v.expect(rg.holds, fmt("instance %d GD bound fails at iterate %d", t, rg.first_violation));
    v.expect(rp.holds, fmt("instance %d PGD bound fails at iterate %d", t, rp.first_violation));
    worst_gd = std::max(worst_gd, rg.worst_ratio);
    worst_pgd = std::max(worst_pgd, rp.worst_ratio);
  }
  v.info << fmt("10 instances, worst error/bound GD %.3f PGD %.3f", worst_gd, worst_pgd);
}

void fd_check(Verdict& v, elimination::ReducedObjective& reduced, std::size_t n_x, double scale, double h,
              std::mt19937_64& gen, const char* label, double& worst) {
  for (int t = 0; t < 20; ++t) {
    const Vector x = oracle::to_vector(scale * oracle::random_vec(n_x, gen));
    const Vector d = oracle::to_vector(oracle::random_vec(n_x, gen));
    const double fd = oracle::fd_directional([&](const Vector& u) { return reduced.value(u); }, x, d, h);
    const double an = linalg::dot(reduced.gradient(x), d);
    const double rel = std::abs(fd - an) / std::abs(an);
    worst = std::max(worst, rel);
    v.expect(rel <= 1e-5, fmt("%s point %d rel error %.2e", label, t, rel));
  }
}

void ac8(Verdict& v) {
  std::mt19937_64 gen(808);
  double worst_q = 0.0, worst_l = 0.0;
  const QuadraticProblem q = problems::build_test_matrix({});
  elimination::QuadraticExactElimination qmap(q, q.partition());
  elimination::ReducedObjective qred(q, q.partition(), qmap);
  fd_check(v, qred, 40, 1.0, 1e-4, gen, "quadratic", worst_q);

  const LogSumExpProblem p(1000, 20);
  elimination::NewtonOptions o;
  o.inner_tol = 1e-13;
  elimination::NewtonElimination newton(p, p.partition(), o);
  elimination::FixedToleranceElimination lmap(newton, 1e-13, Vector(20, 0.0));
  elimination::ReducedObjective lred(p, p.partition(), lmap);
  fd_check(v, lred, 980, 0.5, 1e-5, gen, "log-sum-exp", worst_l);
  v.info << fmt("worst rel error quadratic %.2e, log-sum-exp %.2e", worst_q, worst_l);
}

/// Inexact PGD started at (x*, y*) and Newton elimination at the same pair.
void consistency_at(Verdict& v, const problems::Objective& obj, const BlockPartition& part, const Vector& x_star,
                    const Vector& y_star, const optim::ArmijoParams& armijo, const std::string& label) {
  const double g0_ref = linalg::norm2(obj.grad_x(Vector(part.n(), 0.0), part));
  elimination::NewtonElimination newton(obj, part);
  elimination::ScheduledInexactElimination sched(newton, y_star);
  optim::InexactPgdOptions o;
  o.armijo = armijo;
  o.stop.abs_grad_tol = 1e-6 * g0_ref;
  const optim::InexactPgdResult r = optim::pgd_inexact(obj, part, sched, x_star, y_star, o);
  v.expect(r.record.iterations() <= 1, label + ": inexact PGD took " + std::to_string(r.record.iterations()));

  elimination::NewtonElimination fresh(obj, part);
  const elimination::Elimination e = fresh.solve(x_star, y_star, 1e-10);
  v.expect(e.inner_iterations == 0, label + ": Newton took " + std::to_string(e.inner_iterations) + " steps");
  v.info << label << " outer=" << r.record.iterations() << " inner=" << e.inner_iterations << " ";
}

void ac9(Verdict& v) {
  for (std::uint64_t s : kSeeds) {
    problems::TestMatrixSpec spec;
    spec.seed = s;
    const QuadraticProblem q = problems::build_test_matrix(spec);
    const Vector z = oracle::to_vector(oracle::direct_solve(oracle::to_eigen(q.a()), oracle::to_eigen(q.b())));
    consistency_at(v, q, q.partition(), q.partition().gather_x(z), q.partition().gather_y(z), {},
                   "quadratic s" + std::to_string(s));
  }

  // Numerical optimum of the log-sum-exp problem.
  const LogSumExpProblem p(1000, 20);
  elimination::NewtonOptions no;
  no.inner_tol = 1e-13;
  elimination::NewtonElimination newton(p, p.partition(), no);
  elimination::FixedToleranceElimination map(newton, 1e-13, Vector(20, 0.0));
  optim::NewtonElimOptions o;
  o.stop.rel_grad_tol = 1e-12;
  const optim::OptimResult opt = optim::newton_eliminated(p, p.partition(), map, Vector(980, 0.0), o);
  const Vector y_star = map.eliminate(opt.x).y;
  optim::ArmijoParams lse;
  lse.t0 = 80.0;
  consistency_at(v, p, p.partition(), opt.x, y_star, lse, "log-sum-exp");
}

void ac10(Verdict& v) {
  std::mt19937_64 gen(1010);
  double worst = 0.0;
  int sweeps = 0;
  for (int t = 0; t < 10; ++t) {
    const std::size_t n = 2 + gen() % 19;
    const std::size_t n_y = 1 + gen() % (n - 1);
    const RandomQuadratic rq = random_quadratic(n, n_y, gen, 50.0);
    optim::QuadraticBlockSolver xs(rq.problem, rq.part.swapped()), ys(rq.problem, rq.part);
    optim::AltMinOptions o;
    o.store_iterates = true;
    o.stop.rel_grad_tol = 1e-10;
    const oracle::Vec z0 = oracle::random_vec(n, gen);
    const optim::AltMinResult r = optim::alternating_minimization(rq.problem, rq.part, oracle::to_vector(z0), xs, ys, o);
    const auto& it = r.record.iterates();
    const std::vector<oracle::Vec> gs = oracle::block_gauss_seidel(rq.a, rq.b, rq.part, z0, int(it.size()) - 1);
    for (std::size_t k = 0; k < it.size(); ++k) {
      const double err = (oracle::to_eigen(it[k]) - gs[k]).lpNorm<Eigen::Infinity>();
      worst = std::max(worst, err);
      v.expect(err <= 1e-10, fmt("instance %d sweep %d differs by %.2e", t, int(k), err));
    }
    sweeps += int(it.size()) - 1;
  }
  v.info << fmt("10 instances, %d sweeps, worst difference %.2e", sweeps, worst);
}

}  // namespace

int main() {
  const std::vector<std::tuple<const char*, const char*, std::function<void(Verdict&)>>> criteria = {
      {"AC1", "quadratic GD vs PGD", ac1},
      {"AC2", "partial elimination", ac2},
      {"AC3", "conditioning values", ac3},
      {"AC4", "log-sum-exp GD vs PGD", ac4},
      {"AC5", "n_el sweep", ac5},
      {"AC6", "Schur eigenvalue bounds", ac6},
      {"AC7", "rate bounds", ac7},
      {"AC8", "reduced gradient identity", ac8},
      {"AC9", "consistency at the optimum", ac9},
      {"AC10", "alternating minimization vs Gauss-Seidel", ac10},
  };
  int failed = 0;
  for (const auto& [id, name, run] : criteria) {
    Verdict v;
    try {
      run(v);
    } catch (const std::exception& e) {
      v.expect(false, std::string("exception: ") + e.what());
    }
    const bool ok = v.failures == 0;
    failed += ok ? 0 : 1;
    std::printf("%s %s %s: %s\n", id, ok ? "PASS" : "FAIL", name, ok ? v.info.str().c_str() : v.why.str().c_str());
  }
  std::printf("%d/%zu criteria passed\n", int(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
