#pragma once

#include <vector>

#include "nlreduce/linalg/vector.hpp"
#include "nlreduce/optim/record.hpp"

namespace nlreduce::optim {

struct RateBoundReport {
  bool holds = true;
  int first_violation = -1;  ///< iterate index, -1 if none
  /// max_k ||x_k - x*|| / bound_k over iterates with a positive bound.
  double worst_ratio = 0.0;
};

/// Checks ||x_k - x*|| <= slack * sqrt(kappa) ((kappa-1)/(kappa+1))^k ||x_0 - x*||
/// for every iterate, the GD rate for an SPD Hessian with condition number
/// kappa and optimal steps.
///
/// Errors below `noise_floor` always pass; a negative floor selects
/// 8 eps (||x*|| + ||x_0 - x*||), the rounding level of forming x_k.
RateBoundReport rate_bound_report(const std::vector<Vector>& iterates, double kappa,
                                  const Vector& x_star, double slack = 1.0 + 1e-8,
                                  double noise_floor = -1.0);

/// rate_bound_report(record.iterates(), ...).holds
bool check_rate_bound(const ConvergenceRecord& record, double kappa, const Vector& x_star,
                      double slack = 1.0 + 1e-8);

}  // namespace nlreduce::optim
