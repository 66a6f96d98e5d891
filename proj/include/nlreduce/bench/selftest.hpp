#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace nlreduce::bench {

struct SelftestCase {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Quick invariant checks on small random instances: Schur eigenvalue
/// bounds, reduced gradient against finite differences, alternating
/// minimization against block Gauss-Seidel, CSV round trip, consistency of
/// inexact elimination at the optimum, serial/parallel kernel agreement.
std::vector<SelftestCase> run_selftest(std::uint64_t seed = 1);

}  // namespace nlreduce::bench
