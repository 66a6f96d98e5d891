#include "nlreduce/bench/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "nlreduce/bench/history_csv.hpp"
#include "nlreduce/elimination/exact.hpp"
#include "nlreduce/elimination/newton.hpp"
#include "nlreduce/elimination/reduced.hpp"
#include "nlreduce/elimination/scheduled.hpp"
#include "nlreduce/linalg/eigen.hpp"
#include "nlreduce/optim/alternating.hpp"
#include "nlreduce/optim/gradient_descent.hpp"
#include "nlreduce/optim/newton_eliminated.hpp"
#include "nlreduce/optim/pgd_inexact.hpp"
#include "nlreduce/problems/logsumexp.hpp"

namespace nlreduce::bench {

namespace {

namespace fs = std::filesystem;
using elimination::EliminationMap;
using linalg::Vector;
using problems::BlockPartition;

std::string under(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

/// Exact h: CG on A22 for quadratics, tight Newton otherwise.
struct ExactMap {
  std::unique_ptr<elimination::NewtonElimination> inner;
  std::unique_ptr<EliminationMap> map;
};

ExactMap make_exact_map(const ExperimentConfig& cfg, const BuiltProblem& bp,
                        const BlockPartition& part, const Vector& y0) {
  ExactMap m;
  if (bp.quadratic != nullptr) {
    m.map = std::make_unique<elimination::QuadraticExactElimination>(*bp.quadratic, part);
    m.map->set_warm_start(y0);
  } else {
    elimination::NewtonOptions nopt;
    nopt.inner_tol = cfg.exact_tol;
    m.inner = std::make_unique<elimination::NewtonElimination>(*bp.objective, part, nopt);
    m.map = std::make_unique<elimination::FixedToleranceElimination>(*m.inner, cfg.exact_tol, y0);
  }
  return m;
}

optim::StepMode step_mode(const ExperimentConfig& cfg) {
  switch (cfg.gd_step) {
    case GdStep::optimal: return optim::StepMode::optimal_quadratic;
    case GdStep::armijo: return optim::StepMode::armijo;
    case GdStep::automatic: break;
  }
  return cfg.problem == ProblemKind::quadratic ? optim::StepMode::optimal_quadratic
                                               : optim::StepMode::armijo;
}

optim::ConvergenceRecord run_method(const ExperimentConfig& cfg, const BuiltProblem& bp,
                                    const BlockPartition& part, long& inner_total) {
  const problems::Objective& obj = *bp.objective;
  const Vector z0(obj.dim(), 0.0);
  const Vector x0 = part.gather_x(z0);
  const Vector y0 = part.gather_y(z0);
  const optim::ArmijoParams armijo = cfg.effective_armijo();
  auto total_inner = [](const optim::ConvergenceRecord& r) {
    long s = 0;
    for (const auto& row : r.rows()) s += row.inner_iters;
    return s;
  };

  switch (cfg.method) {
    case Method::gd: {
      problems::ObjectiveFunction f(obj);
      optim::GdOptions o{cfg.stop, step_mode(cfg), armijo, false, {}};
      optim::OptimResult r = optim::gradient_descent(f, z0, o);
      return std::move(r.record);
    }
    case Method::pgd_exact: {
      ExactMap m = make_exact_map(cfg, bp, part, y0);
      elimination::ReducedObjective reduced(obj, part, *m.map);
      optim::GdOptions o{cfg.stop, step_mode(cfg), armijo, false, {}};
      optim::OptimResult r = optim::gradient_descent(reduced, x0, o);
      inner_total = reduced.work().inner_iterations;
      return std::move(r.record);
    }
    case Method::pgd_inexact: {
      elimination::NewtonElimination inner(obj, part);
      elimination::ScheduledInexactElimination sched(inner, y0, {cfg.initial_tol, cfg.rho, 0.0});
      optim::InexactPgdOptions o;
      o.stop = cfg.stop;
      o.armijo = armijo;
      o.floor_fraction = cfg.floor_fraction;
      optim::InexactPgdResult r = optim::pgd_inexact(obj, part, sched, x0, y0, o);
      inner_total = total_inner(r.record);
      return std::move(r.record);
    }
    case Method::altmin: {
      optim::AltMinOptions o;
      o.stop = cfg.stop;
      optim::AltMinResult r = [&] {
        if (bp.quadratic != nullptr) {
          optim::QuadraticBlockSolver xs(*bp.quadratic, part.swapped());
          optim::QuadraticBlockSolver ys(*bp.quadratic, part);
          return optim::alternating_minimization(obj, part, z0, xs, ys, o);
        }
        elimination::NewtonElimination xs(obj, part.swapped());
        elimination::NewtonElimination ys(obj, part);
        return optim::alternating_minimization(obj, part, z0, xs, ys, o);
      }();
      inner_total = total_inner(r.record);
      return std::move(r.record);
    }
    case Method::newton_elim: {
      ExactMap m = make_exact_map(cfg, bp, part, y0);
      optim::NewtonElimOptions o;
      o.stop = cfg.stop;
      o.armijo = cfg.armijo;
      if (!cfg.armijo_t0_set) o.armijo.t0 = 1.0;
      optim::OptimResult r = optim::newton_eliminated(obj, part, *m.map, x0, o);
      inner_total = total_inner(r.record);
      return std::move(r.record);
    }
  }
  throw std::logic_error("run_method: unhandled method");
}

std::string problem_label(const ExperimentConfig& cfg) {
  return std::string(to_string(cfg.problem));
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

}  // namespace

std::string_view to_string(RunStatus status) {
  switch (status) {
    case RunStatus::converged: return "converged";
    case RunStatus::max_iter: return "max-iter";
    case RunStatus::solver_failure: return "solver-failure";
  }
  return "?";
}

int exit_code(RunStatus status) {
  switch (status) {
    case RunStatus::converged: return 0;
    case RunStatus::max_iter: return 2;
    case RunStatus::solver_failure: return 4;
  }
  return 4;
}

BuiltProblem build_problem(const ExperimentConfig& cfg) {
  if (cfg.problem == ProblemKind::quadratic) {
    auto q = std::make_unique<problems::QuadraticProblem>(problems::build_test_matrix(cfg.quadratic));
    const problems::QuadraticProblem* raw = q.get();
    BlockPartition part = q->partition();
    return BuiltProblem{std::move(q), raw, std::move(part)};
  }
  auto p = std::make_unique<problems::LogSumExpProblem>(cfg.lse_n, cfg.lse_n_el);
  BlockPartition part = p->partition();
  return BuiltProblem{std::move(p), nullptr, std::move(part)};
}

BlockPartition scope_partition(const BlockPartition& base, std::optional<std::size_t> n_r) {
  if (!n_r || *n_r == base.n_y()) return base;
  if (*n_r == 0 || *n_r > base.n_y()) {
    throw std::invalid_argument("scope_partition: n_r out of range");
  }
  const auto& by = base.y_indices();
  std::vector<std::size_t> y(by.end() - static_cast<std::ptrdiff_t>(*n_r), by.end());
  std::vector<std::size_t> x = base.x_indices();
  x.insert(x.end(), by.begin(), by.end() - static_cast<std::ptrdiff_t>(*n_r));
  std::sort(x.begin(), x.end());
  return BlockPartition(base.n(), std::move(x), std::move(y));
}

RunResult run_experiment(const ExperimentConfig& cfg, bool write_outputs) {
  cfg.validate();
  const BuiltProblem bp = build_problem(cfg);
  const BlockPartition part = scope_partition(bp.partition, cfg.n_r);

  RunResult out;
  RunSummary& s = out.summary;
  s.method = std::string(to_string(cfg.method));
  s.problem = problem_label(cfg);
  s.eliminated = part.n_y();

  long inner_total = 0;
  optim::Stopwatch clock;
  try {
    out.record = run_method(cfg, bp, part, inner_total);
    s.status = RunStatus::converged;
  } catch (const optim::MaxIterReached& e) {
    out.record = e.record();
    s.status = RunStatus::max_iter;
    s.message = e.what();
  } catch (const Error& e) {
    s.status = RunStatus::solver_failure;
    s.message = e.what();
  } catch (const std::invalid_argument& e) {
    s.status = RunStatus::solver_failure;
    s.message = e.what();
  }
  s.elapsed_s = clock.seconds();
  s.iterations = out.record.iterations();
  s.rel_grad = out.record.empty() ? std::nan("") : out.record.back().rel_grad_norm;
  s.linear_solves = out.record.empty() ? 0 : out.record.back().cum_linear_solves;
  if (inner_total == 0) {
    for (const auto& row : out.record.rows()) inner_total += row.inner_iters;
  }
  s.inner_iterations = inner_total;

  if (write_outputs) {
    fs::create_directories(cfg.out_dir);
    if (!cfg.history.empty() && !out.record.empty()) {
      emit_history_csv(out.record, under(cfg.out_dir, cfg.history));
    }
    if (!cfg.run_log.empty()) append_run_log(s, under(cfg.out_dir, cfg.run_log));
  }
  return out;
}

std::string run_log_line(const RunSummary& s) {
  std::ostringstream o;
  o << s.method << '\t' << s.problem << '\t' << s.eliminated << '\t' << s.iterations << '\t'
    << format_real(s.rel_grad) << '\t' << s.linear_solves << '\t' << fixed(s.elapsed_s, 6) << '\t'
    << to_string(s.status);
  return o.str();
}

void append_run_log(const RunSummary& s, const std::string& path) {
  std::ofstream out(path, std::ios::app);
  if (!out) throw Error("append_run_log: cannot open " + path);
  out << run_log_line(s) << '\n';
  if (!out) throw Error("append_run_log: write failed for " + path);
}

Table1 run_table1_sweep(const ExperimentConfig& base, const std::vector<std::size_t>& n_el_values,
                        const std::string& out_path, const std::vector<Method>& methods) {
  if (n_el_values.empty()) throw std::invalid_argument("run_table1_sweep: no n_el values");
  if (methods.empty()) throw std::invalid_argument("run_table1_sweep: no methods");

  Table1 table{methods, n_el_values, {}};
  std::vector<ExperimentConfig> cfgs;
  for (std::size_t n_el : n_el_values) {
    ExperimentConfig c = base;
    c.problem = ProblemKind::logsumexp;
    c.lse_n_el = n_el;
    c.n_r.reset();
    c.validate("sweep n_el=" + std::to_string(n_el));
    cfgs.push_back(c);
  }

  for (Method m : methods) {
    std::vector<RunSummary> row;
    for (ExperimentConfig c : cfgs) {
      c.method = m;
      if (!c.history.empty()) {
        c.history = "table1_" + std::string(to_string(m)) + "_nel" + std::to_string(c.lse_n_el) + ".csv";
      }
      row.push_back(run_experiment(c, true).summary);
    }
    table.cells.push_back(std::move(row));
  }

  if (!out_path.empty()) {
    const fs::path p(out_path);
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream out(out_path, std::ios::trunc);
    if (!out) throw Error("run_table1_sweep: cannot open " + out_path);
    write_table1(table, out);
    if (!out) throw Error("run_table1_sweep: write failed for " + out_path);
  }
  return table;
}

void write_table1(const Table1& table, std::ostream& out) {
  out << "method";
  for (std::size_t n_el : table.n_el) out << '\t' << n_el;
  out << '\n';
  for (std::size_t i = 0; i < table.methods.size(); ++i) {
    out << to_string(table.methods[i]);
    for (const RunSummary& s : table.cells[i]) {
      out << '\t';
      if (s.status == RunStatus::converged) {
        out << s.iterations << " (" << fixed(s.elapsed_s, 2) << ")";
      } else {
        out << to_string(s.status);
      }
    }
    out << '\n';
  }
}

ConditioningReport conditioning_report(const ExperimentConfig& cfg) {
  if (cfg.problem != ProblemKind::quadratic) {
    throw ConfigError("report-condition", 0, "problem.kind", "needs a quadratic problem");
  }
  cfg.validate();
  if (cfg.quadratic.n_x + cfg.quadratic.n_y > 2000) {
    throw ConfigError("report-condition", 0, "problem.n_x", "dense report limited to n <= 2000");
  }
  const BuiltProblem bp = build_problem(cfg);
  const BlockPartition part = scope_partition(bp.partition, cfg.n_r);
  const problems::QuadraticBlocks blk = bp.quadratic->blocks(part);

  const linalg::Cholesky chol(blk.a22);
  const linalg::Matrix s = blk.a11.matrix() - blk.a12 * chol.solve(blk.a21);

  ConditioningReport r;
  r.eliminated = part.n_y();
  r.kappa_a = linalg::condition_number(bp.quadratic->a());
  r.kappa_a11 = linalg::condition_number(blk.a11);
  r.kappa_s = linalg::condition_number(linalg::SymMatrix(s));
  if (r.kappa_s > r.kappa_a * (1.0 + 1e-9)) {
    throw Error("conditioning_report: kappa(S) = " + format_real(r.kappa_s) + " exceeds kappa(A) = " +
                format_real(r.kappa_a));
  }
  return r;
}

std::string format_conditioning(const ConditioningReport& r) {
  std::ostringstream o;
  o << "eliminated\t" << r.eliminated << '\n'
    << "kappa_A\t" << format_real(r.kappa_a) << '\n'
    << "kappa_A11\t" << format_real(r.kappa_a11) << '\n'
    << "kappa_S\t" << format_real(r.kappa_s) << '\n';
  return o.str();
}

}  // namespace nlreduce::bench
