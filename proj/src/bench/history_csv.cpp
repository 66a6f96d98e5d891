#include "nlreduce/bench/history_csv.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>
#include <vector>

#include "nlreduce/error.hpp"

namespace nlreduce::bench {

namespace {

constexpr std::size_t kColumns = 8;

template <class T>
T parse_field(std::string_view s, int line) {
  T v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error("history csv line " + std::to_string(line) + ": bad field '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

std::string format_real(double v) {
  std::array<char, 40> buf;
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                       std::chars_format::scientific, 16);
  if (ec != std::errc()) throw Error("format_real: conversion failed");
  return std::string(buf.data(), ptr);
}

void write_history_csv(const optim::ConvergenceRecord& record, std::ostream& out) {
  out << kHistoryHeader << '\n';
  for (const optim::IterationRow& r : record.rows()) {
    out << r.iter << ',' << format_real(r.fval) << ',' << format_real(r.grad_norm) << ','
        << format_real(r.rel_grad_norm) << ',' << format_real(r.step) << ',' << r.inner_iters << ','
        << r.cum_linear_solves << ',' << format_real(r.elapsed_s) << '\n';
  }
}

void emit_history_csv(const optim::ConvergenceRecord& record, const std::string& path) {
  if (record.empty()) throw Error("emit_history_csv: empty record for " + path);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("emit_history_csv: cannot open " + path);
  write_history_csv(record, out);
  out.flush();
  if (!out) throw Error("emit_history_csv: write failed for " + path);
}

optim::ConvergenceRecord parse_history_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kHistoryHeader) {
    throw Error("history csv: missing or wrong header");
  }
  optim::ConvergenceRecord record;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) throw Error("history csv line " + std::to_string(line_no) + ": empty line");
    std::vector<std::string_view> f;
    std::string_view rest(line);
    for (;;) {
      const std::size_t comma = rest.find(',');
      f.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (f.size() != kColumns) {
      throw Error("history csv line " + std::to_string(line_no) + ": expected 8 fields");
    }
    record.push(optim::IterationRow{
        parse_field<int>(f[0], line_no), parse_field<double>(f[1], line_no),
        parse_field<double>(f[2], line_no), parse_field<double>(f[3], line_no),
        parse_field<double>(f[4], line_no), parse_field<long>(f[5], line_no),
        parse_field<long>(f[6], line_no), parse_field<double>(f[7], line_no)});
  }
  return record;
}

optim::ConvergenceRecord read_history_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("read_history_csv: cannot open " + path);
  return parse_history_csv(in);
}

}  // namespace nlreduce::bench
