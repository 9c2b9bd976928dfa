#include "cli/csv.hpp"

#include <cmath>
#include <cstdio>

namespace fluidaoi::cli {

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

namespace {

std::string optional_real(const std::optional<double>& v) { return v ? format_real(*v) : std::string(); }

}  // namespace

std::string format_row(const CsvRow& row) {
  std::string s;
  s += format_real(row.rates.lambda) + ',';
  s += format_real(row.rates.mu1) + ',';
  s += format_real(row.rates.mu2) + ',';
  s += format_real(row.rates.r_plus) + ',';
  s += format_real(row.rates.r_minus) + ',';
  s += (row.buffer ? std::to_string(*row.buffer) : std::string("inf")) + ',';
  s += (row.reservoir ? format_real(*row.reservoir) : std::string("inf")) + ',';
  s += row.metric + ',';
  s += row.engine + ',';
  s += optional_real(row.value) + ',';
  s += optional_real(row.ci_low) + ',';
  s += optional_real(row.ci_high) + ',';
  s += row.status;
  return s;
}

void write_header(std::ostream& out) { out << kCsvHeader << '\n'; }

void write_row(std::ostream& out, const CsvRow& row) { out << format_row(row) << '\n'; }

}  // namespace fluidaoi::cli
