#pragma once

#include <vector>

#include "fluidaoi/analytic.hpp"
#include "fluidaoi/model.hpp"

namespace fluidaoi {

/// Stationary queue-length distribution of the finite-buffer system with an
/// infinite reservoir.
///
/// p[i] is the probability of i packets in the system. y[i] is the probability
/// of i packets with a non-empty reservoir, so p[i] - y[i] is the mass at an
/// empty reservoir and p[0] == y[0]. xi0 is the decay rate of the reservoir
/// level density, the negative zero of the characteristic polynomial.
struct StationaryDistribution {
  int n = 0;
  std::vector<double> p;
  std::vector<double> y;
  double xi0 = 0.0;

  [[nodiscard]] double mean_queue_length() const;
  [[nodiscard]] double blocking_prob() const { return p.back(); }
};

/// Characteristic polynomial of the level process, by three-term recurrence:
///   P_0 = 1,
///   P_1(x) = x + lambda/r+ - mu1/r-,
///   P_n(x) = (x - (lambda + mu1)/r-) P_{n-1}(x) - (lambda mu1 / r-^2) P_{n-2}(x).
/// Its zeros are the eigenvalues of the fluid generator restricted to the
/// n + 1 queue states (the trivial zero removed).
[[nodiscard]] double poly_p(int n, double x, const ModelParams& params);

/// All negative zeros of P_n in increasing order. The recurrence has a positive
/// off-diagonal product, so P_0..P_n is a Sturm sequence and every zero is real
/// and simple; roots are isolated by Sturm-count bisection.
[[nodiscard]] std::vector<double> negative_roots(int n, const ModelParams& params);

/// Negative zero whose solution of the balance equations is a valid
/// distribution. Throws StabilityViolation when the reservoir is unstable and
/// RootNotFound when no candidate qualifies.
[[nodiscard]] double find_xi0(int n, const ModelParams& params);

/// Solves the 2n+2 balance equations for a given root by forward recursion.
/// No validity check; normalized so that sum(p) == 1. Throws SingularSystem if
/// the normalizing sum is not a positive finite number.
[[nodiscard]] StationaryDistribution solve_for_root(int n, double xi0, const ModelParams& params);

/// Max absolute residual over all 2n+2 balance equations (normalization included).
[[nodiscard]] double max_residual(const StationaryDistribution& dist, const ModelParams& params);

/// Requires stability_finite_buffer(params, n) and mu2 > 0.
[[nodiscard]] StationaryDistribution solve_stationary_finite(int n, const ModelParams& params);

/// Mean peak AoI of the N-buffer queue via Little's law on the accepted stream.
[[nodiscard]] AoiMetrics mean_peak_aoi_finite(int n, const ModelParams& params);

/// Closed form for N = 1 (no waiting room).
[[nodiscard]] double mean_peak_aoi_mm11(const ModelParams& params);

}  // namespace fluidaoi
