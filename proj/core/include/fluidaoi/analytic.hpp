#pragma once

#include <optional>

#include "fluidaoi/model.hpp"

namespace fluidaoi {

/// Closed-form age metrics. Times are in the same unit as 1/lambda.
struct AoiMetrics {
  std::optional<double> mean_aoi;  ///< only for infinite buffer and infinite reservoir
  double mean_peak_aoi = 0.0;
  double mean_sojourn = 0.0;  ///< E[S]
  std::optional<double> mean_waiting;
  std::optional<double> mean_service;
  double blocking_prob = 0.0;
};

// Infinite buffer, infinite reservoir. Every function below throws
// StabilityViolation unless stability_infinite(params) holds.

/// Pr{S > s}: mixture of the reservoir-driven and queue-driven exponentials.
[[nodiscard]] double sojourn_ccdf(const ModelParams& params, double s);

/// Pr{W > s}. Its value at s = 0 is the probability of waiting, zeta*sigma + eta.
[[nodiscard]] double waiting_ccdf(const ModelParams& params, double s);

[[nodiscard]] double mean_sojourn_inf(const ModelParams& params);
[[nodiscard]] double mean_waiting_inf(const ModelParams& params);

/// E[X] written out in the model rates, without going through E[S] - E[W].
[[nodiscard]] double mean_service_inf(const ModelParams& params);

/// Mean AoI of the FCFS queue. Throws InvalidParams for a finite buffer or reservoir.
[[nodiscard]] double mean_aoi_inf_inf(const ModelParams& params);

/// 1/lambda + E[S]. Throws InvalidParams for a finite buffer or reservoir.
[[nodiscard]] double mean_peak_aoi_inf(const ModelParams& params);

[[nodiscard]] AoiMetrics metrics_inf_inf(const ModelParams& params);

}  // namespace fluidaoi
