#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "fluidaoi/model.hpp"

namespace fluidaoi {

enum class Metric { MeanAoi, PeakAoi, Sojourn, Blocking };

[[nodiscard]] std::string_view metric_name(Metric m) noexcept;
[[nodiscard]] std::optional<Metric> parse_metric(std::string_view name) noexcept;

/// Analytic value of `metric`, dispatching on the buffer and reservoir of
/// `params`. Mean AoI needs an infinite buffer; every metric needs an infinite
/// reservoir (InvalidParams otherwise). Stability and solver errors propagate.
[[nodiscard]] double evaluate_analytic(const ModelParams& params, Metric metric);

/// True when the closed form for this buffer configuration is defined at `params`.
[[nodiscard]] bool analytic_feasible(const ModelParams& params);

struct LambdaInterval {
  double low;                  ///< exclusive lower end
  std::optional<double> high;  ///< exclusive upper end; none for finite buffers
};

/// Open interval of arrival rates where the analytic model is stable.
/// Throws EmptyFeasibleRegion if it is empty.
[[nodiscard]] LambdaInterval feasible_lambda_interval(const ModelParams& params);

struct OptimumOptions {
  double grid_step = 1e-3;
  double tolerance = 1e-4;
};

struct Optimum {
  double lambda;
  double value;
};

/// Minimizes `metric` over lambda in [low, high] for the other rates in
/// `params`: grid search, then golden-section refinement around the best grid
/// point. Infeasible points are skipped. Throws EmptyFeasibleRegion if no grid
/// point is feasible.
[[nodiscard]] Optimum find_optimal_lambda(const ModelParams& params, double low, double high,
                                          Metric metric, const OptimumOptions& options = {});

}  // namespace fluidaoi
