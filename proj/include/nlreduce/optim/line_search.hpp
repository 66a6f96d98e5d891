#pragma once

#include <functional>

#include "nlreduce/linalg/vector.hpp"

namespace nlreduce::optim {

using linalg::Vector;

struct ArmijoParams {
  double c1 = 1e-4;
  double shrink = 0.5;
  double t0 = 1.0;
  int max_trials = 60;

  /// Throws std::invalid_argument unless 0 < c1 < 1, 0 < shrink < 1, t0 > 0,
  /// max_trials >= 1.
  void validate() const;
};

struct LineSearchResult {
  double t = 0.0;
  double value = 0.0;  ///< f(x + t d)
  int trials = 0;
};

/// Backtracking: the first t in {t0, t0 s, t0 s^2, ...} with
/// f(x + t d) <= f0 + c1 t g^T d, where f0 = f(x).
///
/// Throws std::invalid_argument if g^T d >= 0 and LineSearchFailure
/// (carrying the last trial value) after max_trials.
LineSearchResult armijo_search(const std::function<double(const Vector&)>& f, const Vector& x,
                               const Vector& d, const Vector& g, double f0, const ArmijoParams& p);
/// Same, evaluating f(x) first.
LineSearchResult armijo_search(const std::function<double(const Vector&)>& f, const Vector& x,
                               const Vector& d, const Vector& g, const ArmijoParams& p);

}  // namespace nlreduce::optim
