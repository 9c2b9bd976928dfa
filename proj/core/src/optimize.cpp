#include "fluidaoi/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fluidaoi/analytic.hpp"
#include "fluidaoi/errors.hpp"
#include "fluidaoi/stationary.hpp"

namespace fluidaoi {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double value_or_inf(const ModelParams& base, double lambda, Metric metric) {
  try {
    return evaluate_analytic(base.with_lambda(lambda), metric);
  } catch (const StabilityViolation&) {
  } catch (const RootNotFound&) {
  } catch (const SingularSystem&) {
  }
  return kInf;
}

}  // namespace

std::string_view metric_name(Metric m) noexcept {
  switch (m) {
    case Metric::MeanAoi:
      return "mean-aoi";
    case Metric::PeakAoi:
      return "peak-aoi";
    case Metric::Sojourn:
      return "sojourn";
    case Metric::Blocking:
      return "blocking";
  }
  return "?";
}

std::optional<Metric> parse_metric(std::string_view name) noexcept {
  for (Metric m : {Metric::MeanAoi, Metric::PeakAoi, Metric::Sojourn, Metric::Blocking}) {
    if (metric_name(m) == name) return m;
  }
  return std::nullopt;
}

double evaluate_analytic(const ModelParams& params, Metric metric) {
  if (!params.infinite_reservoir()) {
    throw InvalidParams("no closed form for a finite reservoir; use the simulation engine");
  }
  if (params.infinite_buffer()) {
    switch (metric) {
      case Metric::MeanAoi:
        return mean_aoi_inf_inf(params);
      case Metric::PeakAoi:
        return mean_peak_aoi_inf(params);
      case Metric::Sojourn:
        return mean_sojourn_inf(params);
      case Metric::Blocking:
        require_stability_infinite(params);
        return 0.0;
    }
  }
  if (metric == Metric::MeanAoi) {
    throw InvalidParams("no closed form for the mean AoI with a finite buffer; use peak-aoi");
  }
  const auto m = mean_peak_aoi_finite(*params.buffer(), params);
  switch (metric) {
    case Metric::PeakAoi:
      return m.mean_peak_aoi;
    case Metric::Sojourn:
      return m.mean_sojourn;
    case Metric::Blocking:
      return m.blocking_prob;
    case Metric::MeanAoi:
      break;
  }
  return kInf;
}

bool analytic_feasible(const ModelParams& params) {
  if (params.infinite_buffer()) return stability_infinite(params);
  return params.mu2() > 0.0 && stability_finite_buffer(params, *params.buffer());
}

LambdaInterval feasible_lambda_interval(const ModelParams& params) {
  if (params.infinite_buffer()) {
    const double low = params.mu1() * sigma(params);
    const double high = params.mu2();
    if (!(low < high)) {
      throw EmptyFeasibleRegion("no arrival rate satisfies mu1*sigma < lambda < mu2 for " +
                                params.describe());
    }
    return {low, high};
  }
  if (!(params.mu2() > 0.0)) {
    throw EmptyFeasibleRegion("finite-buffer analysis requires mu2 > 0");
  }
  // Sum of (lambda/mu1)^k is increasing in lambda; bisect for the reservoir bound.
  const int n = *params.buffer();
  const double target = params.r_plus() / params.r_minus();
  auto load_sum = [&](double lambda) {
    const double rho = lambda / params.mu1();
    double sum = 0.0;
    double term = 1.0;
    for (int k = 1; k <= n; ++k) {
      term *= rho;
      sum += term;
    }
    return sum;
  };
  double lo = 0.0;
  double hi = params.mu1() * std::max(1.0, target);
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (load_sum(mid) > target ? hi : lo) = mid;
  }
  return {hi, std::nullopt};
}

Optimum find_optimal_lambda(const ModelParams& params, double low, double high, Metric metric,
                            const OptimumOptions& options) {
  if (!(low > 0.0) || !(low < high) || !(options.grid_step > 0.0) || !(options.tolerance > 0.0)) {
    throw InvalidParams("optimum search needs 0 < low < high and positive step and tolerance");
  }
  const auto points = static_cast<long>(std::floor((high - low) / options.grid_step + 1e-9));
  long best = -1;
  double best_value = kInf;
  for (long i = 0; i <= points; ++i) {
    const double lambda = low + static_cast<double>(i) * options.grid_step;
    const double v = value_or_inf(params, lambda, metric);
    if (v < best_value) {
      best_value = v;
      best = i;
    }
  }
  if (best < 0) {
    throw EmptyFeasibleRegion("no stable arrival rate in [" + std::to_string(low) + ", " +
                              std::to_string(high) + "] for " + params.describe());
  }

  const double center = low + static_cast<double>(best) * options.grid_step;
  double a = std::max(low, center - options.grid_step);
  double b = std::min(high, center + options.grid_step);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = value_or_inf(params, c, metric);
  double fd = value_or_inf(params, d, metric);
  while (b - a > options.tolerance) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = value_or_inf(params, c, metric);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = value_or_inf(params, d, metric);
    }
  }
  Optimum out{center, best_value};
  const double mid = 0.5 * (a + b);
  const double fmid = value_or_inf(params, mid, metric);
  if (fmid < out.value) out = {mid, fmid};
  if (fc < out.value) out = {c, fc};
  if (fd < out.value) out = {d, fd};
  return out;
}

}  // namespace fluidaoi
