#pragma once

#include <chrono>
#include <functional>
#include <string>
#include <vector>

#include "nlreduce/error.hpp"
#include "nlreduce/linalg/vector.hpp"

namespace nlreduce::optim {

using linalg::Vector;

/// One row of a convergence history. Row 0 describes the initial point.
struct IterationRow {
  int iter = 0;
  double fval = 0.0;
  double grad_norm = 0.0;
  double rel_grad_norm = 0.0;  ///< grad_norm / grad_norm of row 0 (1 on row 0)
  double step = 0.0;
  long inner_iters = 0;        ///< inner iterations spent on this step
  long cum_linear_solves = 0;
  double elapsed_s = 0.0;

  friend bool operator==(const IterationRow&, const IterationRow&) = default;
};

class ConvergenceRecord {
 public:
  void push(const IterationRow& row) { rows_.push_back(row); }
  const std::vector<IterationRow>& rows() const { return rows_; }
  std::size_t size() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }
  const IterationRow& back() const { return rows_.back(); }
  /// Accepted steps, i.e. rows minus the initial one.
  int iterations() const { return rows_.empty() ? 0 : static_cast<int>(rows_.size()) - 1; }

  /// Iterates in row order; only filled when the optimizer was asked to.
  std::vector<Vector>& iterates() { return iterates_; }
  const std::vector<Vector>& iterates() const { return iterates_; }

 private:
  std::vector<IterationRow> rows_;
  std::vector<Vector> iterates_;
};

struct StopRule {
  double rel_grad_tol = 1e-6;
  int max_iter = 10000;
  /// Optional absolute threshold on ||g||; stop when ||g|| <= max(rel * ||g0||, abs).
  double abs_grad_tol = 0.0;

  void validate() const;
  double threshold(double g0_norm) const;
};

/// Called after each accepted step with the row and the new iterate.
using IterationCallback = std::function<void(const IterationRow&, const Vector&)>;

/// Optimizer ran out of iterations; carries the history and last iterate.
class MaxIterReached : public Error {
 public:
  MaxIterReached(const std::string& what, ConvergenceRecord record, Vector x)
      : Error(what), record_(std::move(record)), x_(std::move(x)) {}

  const ConvergenceRecord& record() const { return record_; }
  const Vector& x() const { return x_; }

 private:
  ConvergenceRecord record_;
  Vector x_;
};

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace nlreduce::optim
