#include "nlreduce/bench/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace nlreduce::bench {

namespace {

std::string describe(const std::string& source, int line, const std::string& key,
                     const std::string& what) {
  std::string msg = source;
  if (line > 0) msg += ":" + std::to_string(line);
  msg += ": ";
  if (!key.empty()) msg += "'" + key + "': ";
  return msg + what;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <class T>
T parse_number(std::string_view s) {
  T v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw std::invalid_argument("expected a number, got '" + std::string(s) + "'");
  }
  return v;
}

double parse_real(std::string_view s) { return parse_number<double>(s); }
std::size_t parse_size(std::string_view s) { return parse_number<std::size_t>(s); }
int parse_int(std::string_view s) { return parse_number<int>(s); }

using Setter = std::function<void(ExperimentConfig&, std::string_view)>;

struct KeyDef {
  const char* name;  // section.key
  const char* help;
  Setter set;
};

const std::vector<KeyDef>& key_table() {
  static const std::vector<KeyDef> table = {
      {"problem.kind", "quadratic | logsumexp",
       [](ExperimentConfig& c, std::string_view v) {
         if (v == "quadratic") c.problem = ProblemKind::quadratic;
         else if (v == "logsumexp") c.problem = ProblemKind::logsumexp;
         else throw std::invalid_argument("expected quadratic or logsumexp");
       }},
      {"problem.n_x", "quadratic: retained block size",
       [](ExperimentConfig& c, std::string_view v) { c.quadratic.n_x = parse_size(v); }},
      {"problem.n_y", "quadratic: eliminated block size",
       [](ExperimentConfig& c, std::string_view v) { c.quadratic.n_y = parse_size(v); }},
      {"problem.spec_x_lo", "quadratic: smallest eigenvalue of A11",
       [](ExperimentConfig& c, std::string_view v) { c.quadratic.spec_x.lo = parse_real(v); }},
      {"problem.spec_x_hi", "quadratic: largest eigenvalue of A11",
       [](ExperimentConfig& c, std::string_view v) { c.quadratic.spec_x.hi = parse_real(v); }},
      {"problem.spec_y_lo", "quadratic: smallest eigenvalue of A22",
       [](ExperimentConfig& c, std::string_view v) { c.quadratic.spec_y.lo = parse_real(v); }},
      {"problem.spec_y_hi", "quadratic: largest eigenvalue of A22",
       [](ExperimentConfig& c, std::string_view v) { c.quadratic.spec_y.hi = parse_real(v); }},
      {"problem.coupling_eps", "quadratic: scale of the off-diagonal block",
       [](ExperimentConfig& c, std::string_view v) { c.quadratic.coupling_eps = parse_real(v); }},
      {"problem.seed", "quadratic: RNG seed",
       [](ExperimentConfig& c, std::string_view v) {
         c.quadratic.seed = parse_number<std::uint64_t>(v);
       }},
      {"problem.n", "logsumexp: dimension",
       [](ExperimentConfig& c, std::string_view v) { c.lse_n = parse_size(v); }},
      {"problem.n_el", "logsumexp: number of eliminated (leading) coordinates",
       [](ExperimentConfig& c, std::string_view v) { c.lse_n_el = parse_size(v); }},
      {"method.name", "gd | pgd-exact | pgd-inexact | altmin | newton-elim",
       [](ExperimentConfig& c, std::string_view v) { c.method = parse_method(v); }},
      {"method.gd_step", "auto | optimal | armijo (step rule of gd and pgd-exact)",
       [](ExperimentConfig& c, std::string_view v) {
         if (v == "auto") c.gd_step = GdStep::automatic;
         else if (v == "optimal") c.gd_step = GdStep::optimal;
         else if (v == "armijo") c.gd_step = GdStep::armijo;
         else throw std::invalid_argument("expected auto, optimal or armijo");
       }},
      {"elimination.scope", "full | partial (partial eliminates the last n_r components of y)",
       [](ExperimentConfig& c, std::string_view v) {
         if (v == "full") c.n_r.reset();
         else if (v == "partial") c.n_r = c.n_r.value_or(0);
         else throw std::invalid_argument("expected full or partial");
       }},
      {"elimination.n_r", "number of eliminated components (implies scope = partial)",
       [](ExperimentConfig& c, std::string_view v) { c.n_r = parse_size(v); }},
      {"elimination.exact_tol", "absolute inner tolerance for exact elimination by Newton",
       [](ExperimentConfig& c, std::string_view v) { c.exact_tol = parse_real(v); }},
      {"elimination.initial_tol", "inexact elimination: starting tolerance",
       [](ExperimentConfig& c, std::string_view v) { c.initial_tol = parse_real(v); }},
      {"elimination.rho", "inexact elimination: tolerance factor per accepted step",
       [](ExperimentConfig& c, std::string_view v) { c.rho = parse_real(v); }},
      {"elimination.floor_fraction", "inexact elimination: floor as a fraction of the outer tolerance",
       [](ExperimentConfig& c, std::string_view v) { c.floor_fraction = parse_real(v); }},
      {"stop.rel_grad_tol", "relative gradient tolerance",
       [](ExperimentConfig& c, std::string_view v) { c.stop.rel_grad_tol = parse_real(v); }},
      {"stop.max_iter", "outer iteration budget",
       [](ExperimentConfig& c, std::string_view v) { c.stop.max_iter = parse_int(v); }},
      {"armijo.c1", "sufficient decrease constant",
       [](ExperimentConfig& c, std::string_view v) { c.armijo.c1 = parse_real(v); }},
      {"armijo.shrink", "backtracking factor",
       [](ExperimentConfig& c, std::string_view v) { c.armijo.shrink = parse_real(v); }},
      {"armijo.t0", "initial trial step (default 1 for quadratic, 80 for logsumexp)",
       [](ExperimentConfig& c, std::string_view v) {
         c.armijo.t0 = parse_real(v);
         c.armijo_t0_set = true;
       }},
      {"armijo.max_trials", "backtracking budget",
       [](ExperimentConfig& c, std::string_view v) { c.armijo.max_trials = parse_int(v); }},
      {"output.dir", "output directory",
       [](ExperimentConfig& c, std::string_view v) { c.out_dir = std::string(v); }},
      {"output.history", "history CSV file name, empty to disable",
       [](ExperimentConfig& c, std::string_view v) { c.history = std::string(v); }},
      {"output.run_log", "run-log TSV file name, empty to disable",
       [](ExperimentConfig& c, std::string_view v) { c.run_log = std::string(v); }},
  };
  return table;
}

void apply_key(ExperimentConfig& cfg, const std::string& name, std::string_view value,
               const std::string& source, int line) {
  for (const KeyDef& def : key_table()) {
    if (name != def.name) continue;
    try {
      def.set(cfg, value);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(source, line, name, e.what());
    }
    return;
  }
  throw ConfigError(source, line, name, "unknown key");
}

bool known_section(std::string_view s) {
  return s == "problem" || s == "method" || s == "elimination" || s == "stop" || s == "armijo" ||
         s == "output";
}

}  // namespace

ConfigError::ConfigError(const std::string& source, int line, const std::string& key,
                         const std::string& what)
    : Error(describe(source, line, key, what)), source_(source), line_(line), key_(key) {}

std::string_view to_string(ProblemKind kind) {
  return kind == ProblemKind::quadratic ? "quadratic" : "logsumexp";
}

std::string_view to_string(Method method) {
  switch (method) {
    case Method::gd: return "gd";
    case Method::pgd_exact: return "pgd-exact";
    case Method::pgd_inexact: return "pgd-inexact";
    case Method::altmin: return "altmin";
    case Method::newton_elim: return "newton-elim";
  }
  return "?";
}

Method parse_method(std::string_view name) {
  for (Method m : {Method::gd, Method::pgd_exact, Method::pgd_inexact, Method::altmin,
                   Method::newton_elim}) {
    if (to_string(m) == name) return m;
  }
  throw std::invalid_argument("unknown method '" + std::string(name) +
                              "' (gd, pgd-exact, pgd-inexact, altmin, newton-elim)");
}

optim::ArmijoParams ExperimentConfig::effective_armijo() const {
  optim::ArmijoParams p = armijo;
  if (!armijo_t0_set) p.t0 = problem == ProblemKind::logsumexp ? 80.0 : 1.0;
  return p;
}

void ExperimentConfig::validate(const std::string& source) const {
  auto fail = [&](const char* key, const std::string& what) {
    throw ConfigError(source, 0, key, what);
  };
  if (problem == ProblemKind::quadratic) {
    if (quadratic.n_x == 0) fail("problem.n_x", "must be >= 1");
    if (quadratic.n_y == 0) fail("problem.n_y", "must be >= 1");
    if (!(quadratic.spec_x.lo > 0.0 && quadratic.spec_x.lo <= quadratic.spec_x.hi)) {
      fail("problem.spec_x_lo", "need 0 < spec_x_lo <= spec_x_hi");
    }
    if (!(quadratic.spec_y.lo > 0.0 && quadratic.spec_y.lo <= quadratic.spec_y.hi)) {
      fail("problem.spec_y_lo", "need 0 < spec_y_lo <= spec_y_hi");
    }
    if (!(quadratic.coupling_eps >= 0.0)) fail("problem.coupling_eps", "must be >= 0");
  } else {
    if (lse_n < 2) fail("problem.n", "must be >= 2");
    if (lse_n_el < 1 || lse_n_el >= lse_n) fail("problem.n_el", "need 1 <= n_el < n");
  }
  const std::size_t n_y = problem == ProblemKind::quadratic ? quadratic.n_y : lse_n_el;
  if (n_r && (*n_r < 1 || *n_r > n_y)) {
    fail("elimination.n_r", "need 1 <= n_r <= " + std::to_string(n_y));
  }
  if (!(exact_tol > 0.0)) fail("elimination.exact_tol", "must be > 0");
  if (!(initial_tol > 0.0)) fail("elimination.initial_tol", "must be > 0");
  if (!(rho > 0.0 && rho < 1.0)) fail("elimination.rho", "need 0 < rho < 1");
  if (!(floor_fraction > 0.0 && floor_fraction <= 1.0)) {
    fail("elimination.floor_fraction", "need 0 < floor_fraction <= 1");
  }
  if (!(stop.rel_grad_tol > 0.0)) fail("stop.rel_grad_tol", "must be > 0");
  if (stop.max_iter < 0) fail("stop.max_iter", "must be >= 0");
  try {
    effective_armijo().validate();
  } catch (const std::invalid_argument& e) {
    fail("armijo", e.what());
  }
  if (method == Method::altmin && n_r) fail("elimination.n_r", "altmin splits the full x/y blocks");
  if (problem == ProblemKind::logsumexp && gd_step == GdStep::optimal) {
    fail("method.gd_step", "optimal steps need a quadratic problem");
  }
}

void apply_config_text(ExperimentConfig& cfg, std::string_view text, const std::string& source) {
  std::string section;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;

    const std::size_t comment = line.find_first_of("#;");
    if (comment != std::string_view::npos) line = line.substr(0, comment);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(source, line_no, "", "malformed section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (!known_section(section)) {
        throw ConfigError(source, line_no, section, "unknown section");
      }
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(source, line_no, "", "expected key = value");
    const std::string key(trim(line.substr(0, eq)));
    if (section.empty()) throw ConfigError(source, line_no, key, "key outside a section");
    apply_key(cfg, section + "." + key, trim(line.substr(eq + 1)), source, line_no);
  }
}

void apply_config_file(ExperimentConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, 0, "", "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  apply_config_text(cfg, buf.str(), path);
}

void apply_override(ExperimentConfig& cfg, std::string_view assignment) {
  const std::size_t eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw ConfigError("--set", 0, std::string(assignment), "expected section.key=value");
  }
  const std::string key(trim(assignment.substr(0, eq)));
  apply_key(cfg, key, trim(assignment.substr(eq + 1)), "--set", 0);
}

std::vector<std::pair<std::string, std::string>> config_keys() {
  std::vector<std::pair<std::string, std::string>> out;
  for (const KeyDef& def : key_table()) out.emplace_back(def.name, def.help);
  return out;
}

}  // namespace nlreduce::bench
