#include "fluidaoi/statistics.hpp"

#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <limits>

#include "fluidaoi/errors.hpp"

namespace fluidaoi {

Estimate student_t_interval(std::span<const double> samples, double level) {
  if (samples.empty()) throw InsufficientData("confidence interval of an empty sample");
  const auto n = static_cast<double>(samples.size());
  double mean = 0.0;
  for (double v : samples) mean += v;
  mean /= n;
  if (samples.size() == 1) return {mean, std::numeric_limits<double>::infinity()};

  double ss = 0.0;
  for (double v : samples) ss += (v - mean) * (v - mean);
  const double std_err = std::sqrt(ss / (n - 1.0) / n);
  const boost::math::students_t dist(n - 1.0);
  const double t = boost::math::quantile(dist, 0.5 + level / 2.0);
  return {mean, t * std_err};
}

}  // namespace fluidaoi
