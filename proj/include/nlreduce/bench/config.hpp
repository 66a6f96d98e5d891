#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nlreduce/error.hpp"
#include "nlreduce/optim/line_search.hpp"
#include "nlreduce/optim/record.hpp"
#include "nlreduce/problems/quadratic.hpp"

namespace nlreduce::bench {

/// Invalid configuration. `line` is 0 for command-line overrides.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& source, int line, const std::string& key, const std::string& what);

  const std::string& source() const { return source_; }
  int line() const { return line_; }
  const std::string& key() const { return key_; }

 private:
  std::string source_;
  int line_;
  std::string key_;
};

enum class ProblemKind { quadratic, logsumexp };
enum class Method { gd, pgd_exact, pgd_inexact, altmin, newton_elim };
enum class GdStep { automatic, optimal, armijo };

std::string_view to_string(ProblemKind kind);
std::string_view to_string(Method method);
/// Throws std::invalid_argument for unknown names.
Method parse_method(std::string_view name);

struct ExperimentConfig {
  ProblemKind problem = ProblemKind::quadratic;
  problems::TestMatrixSpec quadratic;
  std::size_t lse_n = 1000;
  std::size_t lse_n_el = 20;

  Method method = Method::pgd_exact;
  /// Optimal steps on quadratics, Armijo otherwise.
  GdStep gd_step = GdStep::automatic;

  /// Eliminate only the last n_r components of y; unset eliminates all of y.
  std::optional<std::size_t> n_r;
  double exact_tol = 1e-11;     ///< inner tolerance standing in for exact h
  double initial_tol = 1e-3;    ///< inexact schedule start
  double rho = 0.5;
  double floor_fraction = 1e-2;

  optim::StopRule stop;
  optim::ArmijoParams armijo;
  /// Armijo t0 when not set explicitly: 1 for quadratics, 80 for log-sum-exp.
  bool armijo_t0_set = false;

  std::string out_dir = ".";
  std::string history = "history.csv";  ///< relative to out_dir; empty disables
  std::string run_log = "runs.tsv";     ///< relative to out_dir; empty disables

  /// Armijo parameters with the problem-dependent t0 default applied.
  optim::ArmijoParams effective_armijo() const;
  /// Throws ConfigError on inconsistent values.
  void validate(const std::string& source = "config") const;
};

/// Applies `key = value` lines under [section] headers. '#' and ';' start
/// comments. Unknown sections or keys throw ConfigError with the line.
void apply_config_text(ExperimentConfig& cfg, std::string_view text,
                       const std::string& source = "config");
/// Reads and applies a file; I/O failures throw ConfigError.
void apply_config_file(ExperimentConfig& cfg, const std::string& path);
/// Applies one "section.key=value" override.
void apply_override(ExperimentConfig& cfg, std::string_view assignment);

/// All accepted "section.key" names with a one-line description each.
std::vector<std::pair<std::string, std::string>> config_keys();

}  // namespace nlreduce::bench
