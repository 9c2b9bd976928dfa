#pragma once

#include <span>

namespace fluidaoi {

/// Point estimate with the half width of a two-sided confidence interval.
struct Estimate {
  double point = 0.0;
  double ci_half_width = 0.0;

  [[nodiscard]] double low() const noexcept { return point - ci_half_width; }
  [[nodiscard]] double high() const noexcept { return point + ci_half_width; }
  [[nodiscard]] bool covers(double value) const noexcept { return low() <= value && value <= high(); }
};

/// Sample mean with a Student-t interval at `level`. With a single sample the
/// half width is +infinity. Throws InsufficientData on an empty span.
[[nodiscard]] Estimate student_t_interval(std::span<const double> samples, double level = 0.95);

}  // namespace fluidaoi
