#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nlreduce/bench/config.hpp"
#include "nlreduce/optim/record.hpp"
#include "nlreduce/problems/objective.hpp"
#include "nlreduce/problems/quadratic.hpp"

namespace nlreduce::bench {

enum class RunStatus { converged, max_iter, solver_failure };

std::string_view to_string(RunStatus status);
/// 0 converged, 2 max-iter, 4 solver failure.
int exit_code(RunStatus status);

struct RunSummary {
  std::string method;
  std::string problem;
  std::size_t eliminated = 0;  ///< size of the eliminated block
  int iterations = 0;          ///< record rows minus one
  double rel_grad = 0.0;       ///< of the last row
  long linear_solves = 0;
  long inner_iterations = 0;
  double elapsed_s = 0.0;
  RunStatus status = RunStatus::converged;
  std::string message;  ///< error text when not converged
};

struct RunResult {
  RunSummary summary;
  optim::ConvergenceRecord record;
};

/// Problem instance described by a config, plus its natural partition.
struct BuiltProblem {
  std::unique_ptr<problems::Objective> objective;
  const problems::QuadraticProblem* quadratic = nullptr;  ///< set for quadratics
  problems::BlockPartition partition;  ///< y = the block eliminated by default
};

BuiltProblem build_problem(const ExperimentConfig& cfg);

/// Keeps the last n_r indices of base's y block as y; the rest becomes x.
problems::BlockPartition scope_partition(const problems::BlockPartition& base,
                                         std::optional<std::size_t> n_r);

/// Runs the configured method from z0 = 0. Solver errors end up in the
/// summary status. With `write_outputs` the history CSV is written and the
/// summary appended to the run log (paths under cfg.out_dir).
/// Throws ConfigError for an invalid config.
RunResult run_experiment(const ExperimentConfig& cfg, bool write_outputs = true);

/// Tab-separated: method, problem, eliminated, iterations, rel_grad,
/// linear_solves, elapsed_s, status.
std::string run_log_line(const RunSummary& s);
void append_run_log(const RunSummary& s, const std::string& path);

struct Table1 {
  std::vector<Method> methods;
  std::vector<std::size_t> n_el;
  std::vector<std::vector<RunSummary>> cells;  ///< [method][n_el]
};

/// Runs each method on the log-sum-exp problem for every n_el. Cell
/// failures are recorded and the sweep continues. Writes the table to
/// `out_path` unless it is empty.
Table1 run_table1_sweep(const ExperimentConfig& base, const std::vector<std::size_t>& n_el_values,
                        const std::string& out_path,
                        const std::vector<Method>& methods = {Method::gd, Method::pgd_exact,
                                                              Method::pgd_inexact});
/// Rows are methods, columns n_el; cells read "iterations (seconds)".
void write_table1(const Table1& table, std::ostream& out);

struct ConditioningReport {
  std::size_t eliminated = 0;
  double kappa_a = 0.0;
  double kappa_a11 = 0.0;
  double kappa_s = 0.0;
};

/// Dense kappa_2 of A, A11 and S for the configured scope (quadratic only,
/// n <= 2000). Throws Error if kappa(S) > kappa(A); NotSPD propagates.
ConditioningReport conditioning_report(const ExperimentConfig& cfg);
std::string format_conditioning(const ConditioningReport& r);

}  // namespace nlreduce::bench
