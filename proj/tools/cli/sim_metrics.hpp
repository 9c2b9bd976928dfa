#pragma once

#include "fluidaoi/optimize.hpp"
#include "fluidaoi/simulator.hpp"

namespace fluidaoi::cli {

[[nodiscard]] inline const Estimate& sim_metric(const SimEstimate& est, Metric metric) {
  switch (metric) {
    case Metric::MeanAoi:
      return est.mean_aoi;
    case Metric::PeakAoi:
      return est.mean_peak_aoi;
    case Metric::Sojourn:
      return est.mean_sojourn;
    case Metric::Blocking:
      return est.blocking_prob;
  }
  return est.mean_peak_aoi;
}

}  // namespace fluidaoi::cli
