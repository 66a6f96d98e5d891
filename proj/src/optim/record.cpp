#include "nlreduce/optim/record.hpp"

#include <algorithm>
#include <stdexcept>

namespace nlreduce::optim {

void StopRule::validate() const {
  if (!(rel_grad_tol > 0.0)) throw std::invalid_argument("StopRule: rel_grad_tol must be > 0");
  if (max_iter < 0) throw std::invalid_argument("StopRule: max_iter must be >= 0");
  if (!(abs_grad_tol >= 0.0)) throw std::invalid_argument("StopRule: abs_grad_tol must be >= 0");
}

double StopRule::threshold(double g0_norm) const {
  return std::max(rel_grad_tol * g0_norm, abs_grad_tol);
}

}  // namespace nlreduce::optim
