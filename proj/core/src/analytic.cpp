#include "fluidaoi/analytic.hpp"

#include <cmath>

#include "fluidaoi/errors.hpp"

namespace fluidaoi {

namespace {

// Decay rate of the reservoir-driven component, lambda * (1 - sigma) / sigma.
double reservoir_decay(double lambda, double s) { return lambda * (1.0 - s) / s; }

void require_infinite_system(const ModelParams& params, const char* what) {
  if (!params.infinite_buffer() || !params.infinite_reservoir()) {
    throw InvalidParams(std::string(what) +
                        " is only available for an infinite buffer and an infinite reservoir");
  }
}

void require_nonnegative(double s) {
  if (!(s >= 0.0)) throw InvalidParams("time argument must be nonnegative");
}

}  // namespace

double sojourn_ccdf(const ModelParams& params, double s) {
  require_nonnegative(s);
  const auto [sg, z, e] = derived_constants(params);
  const double lam = params.lambda();
  return z * std::exp(-reservoir_decay(lam, sg) * s) +
         (1.0 - z) * std::exp(-(params.mu2() - lam) * s);
}

double waiting_ccdf(const ModelParams& params, double s) {
  require_nonnegative(s);
  const auto [sg, z, e] = derived_constants(params);
  const double lam = params.lambda();
  return z * sg * std::exp(-reservoir_decay(lam, sg) * s) +
         e * std::exp(-(params.mu2() - lam) * s);
}

double mean_sojourn_inf(const ModelParams& params) {
  const auto [sg, z, e] = derived_constants(params);
  const double lam = params.lambda();
  return z / reservoir_decay(lam, sg) + (1.0 - z) / (params.mu2() - lam);
}

double mean_waiting_inf(const ModelParams& params) {
  const auto [sg, z, e] = derived_constants(params);
  const double lam = params.lambda();
  return z * sg / reservoir_decay(lam, sg) + e / (params.mu2() - lam);
}

double mean_service_inf(const ModelParams& params) {
  const auto [sg, z, e] = derived_constants(params);
  const double lam = params.lambda();
  const double mu1 = params.mu1();
  const double mu2 = params.mu2();
  return z * sg / lam + (1.0 - sg) * (lam * mu2 - mu1 * mu2 * sg - lam * lam + lam * mu1 * sg) /
                            ((mu2 - lam) * (lam - mu2 * sg) * (mu2 - mu1 * sg));
}

double mean_aoi_inf_inf(const ModelParams& params) {
  require_infinite_system(params, "mean AoI");
  const auto [sg, z, e] = derived_constants(params);
  const double lam = params.lambda();
  const double mu1 = params.mu1();
  const double mu2 = params.mu2();
  const double decay_sum = lam + reservoir_decay(lam, sg);

  // lambda * E[WA], split by CCDF component, then E[X] and E[A^2] / (2 E[A]).
  const double wa_reservoir = lam * z * sg / ((1.0 - sg) * decay_sum * decay_sum);
  const double wa_queue = lam * lam * (1.0 - z) / ((mu2 - lam) * mu2 * mu2);
  const double service_reservoir = z * sg / lam;
  const double service_queue = (1.0 - sg) * (lam * mu2 - mu1 * mu2 * sg - lam * lam + lam * mu1 * sg) /
                               ((mu2 - lam) * (lam - mu2 * sg) * (mu2 - mu1 * sg));
  return wa_reservoir + wa_queue + service_reservoir + service_queue + 1.0 / lam;
}

double mean_peak_aoi_inf(const ModelParams& params) {
  require_infinite_system(params, "infinite-buffer peak AoI");
  return 1.0 / params.lambda() + mean_sojourn_inf(params);
}

AoiMetrics metrics_inf_inf(const ModelParams& params) {
  AoiMetrics m;
  m.mean_aoi = mean_aoi_inf_inf(params);
  m.mean_sojourn = mean_sojourn_inf(params);
  m.mean_peak_aoi = 1.0 / params.lambda() + m.mean_sojourn;
  m.mean_waiting = mean_waiting_inf(params);
  m.mean_service = m.mean_sojourn - *m.mean_waiting;
  m.blocking_prob = 0.0;
  return m;
}

}  // namespace fluidaoi
