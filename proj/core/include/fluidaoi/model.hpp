#pragma once

#include <optional>
#include <string>

namespace fluidaoi {

/// Relative margin used by the strict stability predicates. Parameters that
/// satisfy a bound only up to this margin sit on a pole of the closed forms and
/// are treated as unstable.
inline constexpr double kStabilityMargin = 1e-12;

/// Rates of the fluid-regulated queue.
struct Rates {
  double lambda = 0.0;   ///< packet arrival rate
  double mu1 = 0.0;      ///< service rate while the reservoir is non-empty
  double mu2 = 0.0;      ///< service rate while the reservoir is empty
  double r_plus = 0.0;   ///< fill rate while the server is idle
  double r_minus = 0.0;  ///< depletion rate while the server is busy
};

/// Validated parameterization of the energy-harvesting transmitter.
///
/// `buffer` counts packets in the system including the one in service;
/// `reservoir` is the energy capacity. An empty optional means infinite.
/// Instances are immutable once built.
class ModelParams {
 public:
  /// Throws InvalidParams unless all rates are positive (mu2 may be zero),
  /// mu2 <= mu1, buffer >= 1 and reservoir > 0.
  static ModelParams make(const Rates& rates, std::optional<int> buffer = std::nullopt,
                          std::optional<double> reservoir = std::nullopt);

  [[nodiscard]] double lambda() const noexcept { return rates_.lambda; }
  [[nodiscard]] double mu1() const noexcept { return rates_.mu1; }
  [[nodiscard]] double mu2() const noexcept { return rates_.mu2; }
  [[nodiscard]] double r_plus() const noexcept { return rates_.r_plus; }
  [[nodiscard]] double r_minus() const noexcept { return rates_.r_minus; }
  [[nodiscard]] const Rates& rates() const noexcept { return rates_; }

  [[nodiscard]] std::optional<int> buffer() const noexcept { return buffer_; }
  [[nodiscard]] std::optional<double> reservoir() const noexcept { return reservoir_; }
  [[nodiscard]] bool infinite_buffer() const noexcept { return !buffer_.has_value(); }
  [[nodiscard]] bool infinite_reservoir() const noexcept { return !reservoir_.has_value(); }

  /// Copy with a different arrival rate (revalidated).
  [[nodiscard]] ModelParams with_lambda(double lambda) const;
  [[nodiscard]] ModelParams with_buffer(std::optional<int> buffer) const;
  [[nodiscard]] ModelParams with_reservoir(std::optional<double> reservoir) const;

  [[nodiscard]] std::string describe() const;

 private:
  ModelParams(const Rates& rates, std::optional<int> buffer, std::optional<double> reservoir)
      : rates_(rates), buffer_(buffer), reservoir_(reservoir) {}

  Rates rates_;
  std::optional<int> buffer_;
  std::optional<double> reservoir_;
};

struct DerivedConstants {
  double sigma;
  double zeta;
  double eta;
};

/// r+ / (r+ + r-), the fraction of time the reservoir would fill if it never emptied.
[[nodiscard]] double sigma(const ModelParams& params) noexcept;

/// Weight of the reservoir-driven exponential in the sojourn-time CCDF.
/// Throws StabilityViolation unless stability_infinite(params).
[[nodiscard]] double zeta(const ModelParams& params);

/// Weight of the queue-driven exponential in the waiting-time CCDF.
/// Uses the denominator (lambda - mu2 sigma)(mu2 - mu1 sigma), the form that is
/// consistent with E[X] and with the unregulated M/M/1 limit.
[[nodiscard]] double eta(const ModelParams& params);

[[nodiscard]] DerivedConstants derived_constants(const ModelParams& params);

/// sigma < lambda/mu1 <= lambda/mu2 < 1, each strict bound with kStabilityMargin.
[[nodiscard]] bool stability_infinite(const ModelParams& params) noexcept;

/// sum_{k=1..n} (lambda/mu1)^k > r+/r-. Does not involve mu2, so mu2 = 0 is accepted.
/// Throws InvalidParams for n < 1.
[[nodiscard]] bool stability_finite_buffer(const ModelParams& params, int n);

/// Throws StabilityViolation with a diagnostic when stability_infinite fails.
void require_stability_infinite(const ModelParams& params);
void require_stability_finite_buffer(const ModelParams& params, int n);

}  // namespace fluidaoi
