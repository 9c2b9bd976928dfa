#include "fluidaoi/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "fluidaoi/errors.hpp"

namespace fluidaoi {

namespace {

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

// a < b with a relative margin; equality within the margin counts as a violation.
bool strictly_less(double a, double b) {
  return b - a > kStabilityMargin * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

ModelParams ModelParams::make(const Rates& rates, std::optional<int> buffer,
                              std::optional<double> reservoir) {
  if (!positive_finite(rates.lambda)) throw InvalidParams("lambda must be positive and finite");
  if (!positive_finite(rates.mu1)) throw InvalidParams("mu1 must be positive and finite");
  if (!std::isfinite(rates.mu2) || rates.mu2 < 0.0)
    throw InvalidParams("mu2 must be nonnegative and finite");
  if (!positive_finite(rates.r_plus)) throw InvalidParams("r_plus must be positive and finite");
  if (!positive_finite(rates.r_minus)) throw InvalidParams("r_minus must be positive and finite");
  if (rates.mu2 > rates.mu1) throw InvalidParams("mu2 must not exceed mu1");
  if (buffer && *buffer < 1) throw InvalidParams("buffer size must be at least 1");
  if (reservoir && !positive_finite(*reservoir))
    throw InvalidParams("reservoir capacity must be positive and finite");
  return ModelParams(rates, buffer, reservoir);
}

ModelParams ModelParams::with_lambda(double lambda) const {
  Rates r = rates_;
  r.lambda = lambda;
  return make(r, buffer_, reservoir_);
}

ModelParams ModelParams::with_buffer(std::optional<int> buffer) const {
  return make(rates_, buffer, reservoir_);
}

ModelParams ModelParams::with_reservoir(std::optional<double> reservoir) const {
  return make(rates_, buffer_, reservoir);
}

std::string ModelParams::describe() const {
  char buf[256];
  std::snprintf(buf, sizeof buf, "lambda=%g mu1=%g mu2=%g r+=%g r-=%g", lambda(), mu1(), mu2(),
                r_plus(), r_minus());
  std::string out = buf;
  out += buffer_ ? " N=" + std::to_string(*buffer_) : std::string(" N=inf");
  if (reservoir_) {
    std::snprintf(buf, sizeof buf, " D=%g", *reservoir_);
    out += buf;
  } else {
    out += " D=inf";
  }
  return out;
}

double sigma(const ModelParams& params) noexcept {
  return params.r_plus() / (params.r_plus() + params.r_minus());
}

bool stability_infinite(const ModelParams& params) noexcept {
  const double s = sigma(params);
  const double rho1 = params.lambda() / params.mu1();
  if (params.mu2() <= 0.0) return false;
  const double rho2 = params.lambda() / params.mu2();
  return strictly_less(s, rho1) && rho1 <= rho2 && strictly_less(rho2, 1.0);
}

bool stability_finite_buffer(const ModelParams& params, int n) {
  if (n < 1) throw InvalidParams("buffer size must be at least 1");
  const double rho = params.lambda() / params.mu1();
  double sum = 0.0;
  double term = 1.0;
  for (int k = 1; k <= n; ++k) {
    term *= rho;
    sum += term;
  }
  return strictly_less(params.r_plus() / params.r_minus(), sum);
}

void require_stability_infinite(const ModelParams& params) {
  if (!stability_infinite(params)) {
    throw StabilityViolation("stability condition sigma < lambda/mu1 <= lambda/mu2 < 1 fails for " +
                             params.describe());
  }
}

void require_stability_finite_buffer(const ModelParams& params, int n) {
  if (!stability_finite_buffer(params, n)) {
    throw StabilityViolation("reservoir stability sum_{k<=" + std::to_string(n) +
                             "} (lambda/mu1)^k > r+/r- fails for " + params.describe());
  }
}

double zeta(const ModelParams& params) {
  require_stability_infinite(params);
  const double s = sigma(params);
  const double lam = params.lambda();
  const double mu1 = params.mu1();
  const double mu2 = params.mu2();
  return (mu1 - mu2) * (mu2 - lam) * s / ((lam - mu2 * s) * (mu2 - mu1 * s));
}

double eta(const ModelParams& params) {
  require_stability_infinite(params);
  const double s = sigma(params);
  const double lam = params.lambda();
  const double mu1 = params.mu1();
  const double mu2 = params.mu2();
  return lam * (lam - mu1 * s) * (1.0 - s) / ((lam - mu2 * s) * (mu2 - mu1 * s));
}

DerivedConstants derived_constants(const ModelParams& params) {
  return {sigma(params), zeta(params), eta(params)};
}

}  // namespace fluidaoi
