#include "nlreduce/optim/rate_bound.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace nlreduce::optim {

RateBoundReport rate_bound_report(const std::vector<Vector>& iterates, double kappa,
                                  const Vector& x_star, double slack, double noise_floor) {
  if (!(kappa >= 1.0)) throw std::invalid_argument("rate_bound_report: kappa must be >= 1");
  RateBoundReport rep;
  if (iterates.empty()) return rep;

  const double e0 = linalg::norm2(iterates.front() - x_star);
  if (noise_floor < 0.0) {
    noise_floor = 8.0 * std::numeric_limits<double>::epsilon() * (linalg::norm2(x_star) + e0);
  }
  const double rate = (kappa - 1.0) / (kappa + 1.0);
  const double lead = std::sqrt(kappa) * e0;
  // Bound in log form so long runs do not underflow rate^k early.
  const double log_rate = rate > 0.0 ? std::log(rate) : -std::numeric_limits<double>::infinity();

  for (std::size_t k = 0; k < iterates.size(); ++k) {
    const double err = linalg::norm2(iterates[k] - x_star);
    const double bound =
        k == 0 ? lead : (lead > 0.0 ? lead * std::exp(static_cast<double>(k) * log_rate) : 0.0);
    if (bound > 0.0) rep.worst_ratio = std::max(rep.worst_ratio, err / bound);
    if (err > slack * bound && err > noise_floor && rep.holds) {
      rep.holds = false;
      rep.first_violation = static_cast<int>(k);
    }
  }
  return rep;
}

bool check_rate_bound(const ConvergenceRecord& record, double kappa, const Vector& x_star,
                      double slack) {
  return rate_bound_report(record.iterates(), kappa, x_star, slack).holds;
}

}  // namespace nlreduce::optim
