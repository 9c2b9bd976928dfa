#include "fluidaoi/stationary.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <string>

#include "fluidaoi/errors.hpp"

namespace fluidaoi {

namespace {

constexpr double kRootTolerance = 1e-12;
constexpr double kNegativityTolerance = 1e-12;
constexpr double kResidualTolerance = 1e-10;

struct Recurrence {
  double first_shift;   // P_1(x) = x - first_shift
  double shift;         // P_k(x) = (x - shift) P_{k-1} - coupling P_{k-2}
  double coupling;

  explicit Recurrence(const ModelParams& params)
      : first_shift(params.mu1() / params.r_minus() - params.lambda() / params.r_plus()),
        shift((params.lambda() + params.mu1()) / params.r_minus()),
        coupling(params.lambda() * params.mu1() / (params.r_minus() * params.r_minus())) {}

  // Number of zeros of P_n strictly greater than x (sign changes of P_0..P_n).
  [[nodiscard]] int count_above(int n, double x) const {
    int count = 0;
    double q = x - first_shift;
    for (int k = 1;; ++k) {
      if (q == 0.0) q = -std::numeric_limits<double>::min();
      if (q < 0.0) ++count;
      if (k == n) break;
      q = (x - shift) - coupling / q;
    }
    return count;
  }

  // Zeros of the symmetrized tridiagonal lie inside this Gershgorin disc.
  [[nodiscard]] double bound() const {
    return std::max(std::abs(first_shift), std::abs(shift)) + 2.0 * std::sqrt(coupling) + 1.0;
  }
};

void require_lemma_preconditions(int n, const ModelParams& params) {
  if (n < 1) throw InvalidParams("buffer size must be at least 1");
  if (!params.infinite_reservoir())
    throw InvalidParams("finite-buffer analysis requires an infinite reservoir");
  if (!(params.mu2() > 0.0))
    throw InvalidParams("finite-buffer analysis requires mu2 > 0 (peak AoI diverges as mu2 -> 0)");
  require_stability_finite_buffer(params, n);
}

// Magnitude of the terms entering P_n(x), used to scale the root tolerance.
double poly_scale(int n, double x, const Recurrence& rec) {
  double prev = 1.0;
  double cur = std::abs(x) + std::abs(rec.first_shift);
  for (int k = 2; k <= n; ++k) {
    const double next = (std::abs(x) + rec.shift) * cur + rec.coupling * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

bool is_valid_distribution(const StationaryDistribution& d, const ModelParams& params) {
  for (int i = 0; i <= d.n; ++i) {
    if (!std::isfinite(d.p[i]) || !std::isfinite(d.y[i])) return false;
    if (d.p[i] < -kNegativityTolerance || d.y[i] < -kNegativityTolerance) return false;
    if (d.p[i] - d.y[i] < -kNegativityTolerance) return false;
  }
  return max_residual(d, params) <= kResidualTolerance;
}

}  // namespace

double StationaryDistribution::mean_queue_length() const {
  double sum = 0.0;
  for (int i = 1; i <= n; ++i) sum += i * p[i];
  return sum;
}

double poly_p(int n, double x, const ModelParams& params) {
  if (n < 0) throw InvalidParams("polynomial degree must be nonnegative");
  const Recurrence rec(params);
  double prev = 1.0;
  if (n == 0) return prev;
  double cur = x - rec.first_shift;
  for (int k = 2; k <= n; ++k) {
    const double next = (x - rec.shift) * cur - rec.coupling * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

std::vector<double> negative_roots(int n, const ModelParams& params) {
  if (n < 1) throw InvalidParams("polynomial degree must be at least 1");
  const Recurrence rec(params);
  const double lo_bound = -rec.bound();
  const int negatives = n - rec.count_above(n, 0.0);

  std::vector<double> roots;
  roots.reserve(static_cast<std::size_t>(negatives));
  for (int j = 0; j < negatives; ++j) {
    // j-th smallest zero: the smallest x with more than j zeros below it.
    double lo = lo_bound;
    double hi = 0.0;
    for (int it = 0; it < 2000; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (n - rec.count_above(n, mid) > j) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    const double plo = std::abs(poly_p(n, lo, params));
    const double phi = std::abs(poly_p(n, hi, params));
    roots.push_back(plo < phi ? lo : hi);
  }
  return roots;
}

StationaryDistribution solve_for_root(int n, double xi0, const ModelParams& params) {
  const double lam = params.lambda();
  const double mu1 = params.mu1();
  const double mu2 = params.mu2();

  StationaryDistribution d;
  d.n = n;
  d.xi0 = xi0;
  d.y.assign(static_cast<std::size_t>(n) + 1, 0.0);
  d.p.assign(static_cast<std::size_t>(n) + 1, 0.0);

  d.y[0] = 1.0;
  d.y[1] = (lam + params.r_plus() * xi0) * d.y[0] / mu1;
  for (int i = 1; i < n; ++i) {
    d.y[i + 1] = ((lam + mu1 - params.r_minus() * xi0) * d.y[i] - lam * d.y[i - 1]) / mu1;
  }
  d.p[0] = d.y[0];
  for (int i = 0; i < n; ++i) {
    d.p[i + 1] = (lam * d.p[i] - (mu1 - mu2) * d.y[i + 1]) / mu2;
  }

  const double total = std::accumulate(d.p.begin(), d.p.end(), 0.0);
  if (!std::isfinite(total) || !(std::abs(total) > std::numeric_limits<double>::epsilon())) {
    throw SingularSystem("balance equations are numerically singular for " + params.describe());
  }
  for (auto& v : d.p) v /= total;
  for (auto& v : d.y) v /= total;
  return d;
}

double max_residual(const StationaryDistribution& d, const ModelParams& params) {
  const double lam = params.lambda();
  const double mu1 = params.mu1();
  const double mu2 = params.mu2();
  const double xi = d.xi0;
  double worst = std::abs(mu1 * d.y[1] - (lam + params.r_plus() * xi) * d.y[0]);
  for (int i = 1; i < d.n; ++i) {
    worst = std::max(worst, std::abs(mu1 * d.y[i + 1] -
                                     (lam + mu1 - params.r_minus() * xi) * d.y[i] +
                                     lam * d.y[i - 1]));
  }
  worst = std::max(worst, std::abs(d.p[0] - d.y[0]));
  for (int i = 0; i < d.n; ++i) {
    worst = std::max(worst, std::abs(mu2 * d.p[i + 1] - lam * d.p[i] + (mu1 - mu2) * d.y[i + 1]));
  }
  worst = std::max(worst, std::abs(std::accumulate(d.p.begin(), d.p.end(), 0.0) - 1.0));
  return worst;
}

double find_xi0(int n, const ModelParams& params) {
  if (n < 1) throw InvalidParams("buffer size must be at least 1");
  require_stability_finite_buffer(params, n);
  auto roots = negative_roots(n, params);
  // Closest to zero first.
  std::sort(roots.begin(), roots.end(), std::greater<>());
  for (double r : roots) {
    const double scale = std::max(1.0, poly_scale(n, r, Recurrence(params)));
    if (std::abs(poly_p(n, r, params)) > kRootTolerance * scale) continue;
    if (!(params.mu2() > 0.0)) return r;
    try {
      if (is_valid_distribution(solve_for_root(n, r, params), params)) return r;
    } catch (const SingularSystem&) {
    }
  }
  throw RootNotFound("no negative zero of P_" + std::to_string(n) +
                     " yields a valid stationary distribution for " + params.describe());
}

StationaryDistribution solve_stationary_finite(int n, const ModelParams& params) {
  require_lemma_preconditions(n, params);
  auto d = solve_for_root(n, find_xi0(n, params), params);
  // Round-off below the tolerance; keep the vector a proper distribution.
  for (auto& v : d.p) v = std::max(v, 0.0);
  for (auto& v : d.y) v = std::max(v, 0.0);
  return d;
}

AoiMetrics mean_peak_aoi_finite(int n, const ModelParams& params) {
  const auto d = solve_stationary_finite(n, params);
  const double accepted = params.lambda() * (1.0 - d.blocking_prob());
  AoiMetrics m;
  m.blocking_prob = d.blocking_prob();
  m.mean_sojourn = d.mean_queue_length() / accepted;
  m.mean_peak_aoi = 1.0 / accepted + m.mean_sojourn;
  return m;
}

double mean_peak_aoi_mm11(const ModelParams& params) {
  require_lemma_preconditions(1, params);
  const double lam = params.lambda();
  const double mu1 = params.mu1();
  const double mu2 = params.mu2();
  const double ratio = params.r_plus() / params.r_minus();
  return (2.0 * ratio * (mu1 * mu2 - mu1 * mu1) + 2.0 * lam * mu1 + mu1 * mu2) / (lam * mu1 * mu2);
}

}  // namespace fluidaoi
