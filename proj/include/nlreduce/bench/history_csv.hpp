#pragma once

#include <iosfwd>
#include <string>

#include "nlreduce/optim/record.hpp"

namespace nlreduce::bench {

inline constexpr const char* kHistoryHeader =
    "iter,fval,grad_norm,rel_grad_norm,step,inner_iters,cum_linear_solves,elapsed_s";

/// Scientific form with 17 significant digits, which parses
/// back to the same double.
std::string format_real(double v);

/// Header plus one newline-terminated row per record row.
void write_history_csv(const optim::ConvergenceRecord& record, std::ostream& out);
/// Throws Error with the path on I/O failure or an empty record.
void emit_history_csv(const optim::ConvergenceRecord& record, const std::string& path);

/// Inverse of write_history_csv; throws Error on malformed input.
optim::ConvergenceRecord parse_history_csv(std::istream& in);
optim::ConvergenceRecord read_history_csv(const std::string& path);

}  // namespace nlreduce::bench
