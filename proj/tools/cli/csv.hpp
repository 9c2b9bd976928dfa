#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "fluidaoi/model.hpp"

namespace fluidaoi::cli {

inline constexpr std::string_view kCsvHeader =
    "lambda,mu1,mu2,r_plus,r_minus,buffer,reservoir,metric,engine,value,ci_low,ci_high,status";

/// One output row. Empty optionals render as empty fields.
struct CsvRow {
  Rates rates;
  std::optional<int> buffer;
  std::optional<double> reservoir;
  std::string metric;
  std::string engine;
  std::optional<double> value;
  std::optional<double> ci_low;
  std::optional<double> ci_high;
  std::string status = "ok";
};

/// Real number with 9 significant digits ("inf"/"nan" spelled out).
[[nodiscard]] std::string format_real(double v);

[[nodiscard]] std::string format_row(const CsvRow& row);

void write_header(std::ostream& out);
void write_row(std::ostream& out, const CsvRow& row);

}  // namespace fluidaoi::cli
