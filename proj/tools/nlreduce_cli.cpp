#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "nlreduce/bench/config.hpp"
#include "nlreduce/bench/experiment.hpp"
#include "nlreduce/bench/history_csv.hpp"
#include "nlreduce/bench/selftest.hpp"

namespace {

using namespace nlreduce;

constexpr int kExitConfig = 3;
constexpr int kExitSolver = 4;

struct CommonFlags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string method;
  std::vector<std::string> sets;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config, "experiment file ([section] key = value)");
  cmd->add_option("--seed", f.seed, "RNG seed of the quadratic problem");
  cmd->add_option("--out", f.out, "output directory");
  cmd->add_option("--method", f.method, "gd | pgd-exact | pgd-inexact | altmin | newton-elim");
  cmd->add_option("--set", f.sets, "override, e.g. --set stop.max_iter=500 (repeatable)");
}

/// File first, then --set, then the dedicated flags.
bench::ExperimentConfig load(const CommonFlags& f) {
  bench::ExperimentConfig cfg;
  if (!f.config.empty()) bench::apply_config_file(cfg, f.config);
  for (const std::string& s : f.sets) bench::apply_override(cfg, s);
  if (f.seed) cfg.quadratic.seed = *f.seed;
  if (!f.out.empty()) cfg.out_dir = f.out;
  if (!f.method.empty()) {
    try {
      cfg.method = bench::parse_method(f.method);
    } catch (const std::invalid_argument& e) {
      throw bench::ConfigError("--method", 0, "method.name", e.what());
    }
  }
  cfg.validate();
  return cfg;
}

std::vector<std::size_t> parse_list(const std::string& s) {
  std::vector<std::size_t> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    const std::size_t comma = std::min(s.find(',', pos), s.size());
    const std::string item = s.substr(pos, comma - pos);
    std::size_t used = 0;
    std::size_t v = 0;
    try {
      v = std::stoul(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) {
      throw bench::ConfigError("--n-el", 0, "n_el", "bad list entry '" + item + "'");
    }
    out.push_back(v);
    pos = comma + 1;
  }
  if (out.empty()) throw bench::ConfigError("--n-el", 0, "n_el", "empty list");
  return out;
}

std::string keys_footer() {
  std::string s = "Config keys ([section] key = value in --config files, section.key=value with --set):\n";
  for (const auto& [key, help] : bench::config_keys()) s += "  " + key + "  " + help + "\n";
  s += "Exit codes: 0 converged, 2 max-iter, 3 config error, 4 solver failure.";
  return s;
}

void print_summary(const bench::RunSummary& s) {
  std::cout << "method=" << s.method << " problem=" << s.problem << " eliminated=" << s.eliminated
            << " iterations=" << s.iterations << " rel_grad=" << bench::format_real(s.rel_grad)
            << " linear_solves=" << s.linear_solves << " inner_iterations=" << s.inner_iterations
            << " elapsed_s=" << s.elapsed_s << " status=" << bench::to_string(s.status) << '\n';
  if (!s.message.empty()) std::cerr << s.message << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gradient descent with nonlinear elimination: experiments and checks"};
  app.footer(keys_footer());
  app.require_subcommand(1);

  CommonFlags run_flags, sweep_flags, cond_flags;
  CLI::App* run = app.add_subcommand("run", "run one configured method and write its history");
  add_common(run, run_flags);

  CLI::App* sweep = app.add_subcommand("sweep-table1", "gd / pgd-exact / pgd-inexact over n_el on log-sum-exp");
  add_common(sweep, sweep_flags);
  std::string n_el_list = "10,50,200,400";
  std::string table_name = "table1.tsv";
  sweep->add_option("--n-el", n_el_list, "comma separated n_el values")->capture_default_str();
  sweep->add_option("--table", table_name, "table file name under --out")->capture_default_str();

  CLI::App* cond = app.add_subcommand("report-condition", "kappa_2 of A, A11 and S for a quadratic");
  add_common(cond, cond_flags);

  CLI::App* self = app.add_subcommand("selftest", "run the built-in invariant checks");
  std::uint64_t self_seed = 1;
  self->add_option("--seed", self_seed, "RNG seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*run) {
      const bench::ExperimentConfig cfg = load(run_flags);
      const bench::RunResult r = bench::run_experiment(cfg);
      print_summary(r.summary);
      return bench::exit_code(r.summary.status);
    }
    if (*sweep) {
      bench::ExperimentConfig cfg = load(sweep_flags);
      const std::vector<std::size_t> n_el = parse_list(n_el_list);
      const std::string path = (std::filesystem::path(cfg.out_dir) / table_name).string();
      const bench::Table1 t = bench::run_table1_sweep(cfg, n_el, path);
      bench::write_table1(t, std::cout);
      int code = 0;
      for (const auto& row : t.cells) {
        for (const auto& s : row) code = std::max(code, bench::exit_code(s.status));
      }
      return code;
    }
    if (*cond) {
      bench::ExperimentConfig cfg = load(cond_flags);
      std::cout << bench::format_conditioning(bench::conditioning_report(cfg));
      return 0;
    }
    if (*self) {
      bool ok = true;
      for (const bench::SelftestCase& c : bench::run_selftest(self_seed)) {
        std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << "  " << c.detail << '\n';
        ok = ok && c.passed;
      }
      return ok ? 0 : kExitSolver;
    }
  } catch (const bench::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSolver;
  }
  return kExitConfig;
}
