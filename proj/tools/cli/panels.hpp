#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fluidaoi/model.hpp"
#include "fluidaoi/optimize.hpp"
#include "fluidaoi/simulator.hpp"
#include "fluidaoi/statistics.hpp"

namespace fluidaoi::cli {

/// Simulation settings shared by the CLI commands.
struct SimSettings {
  double horizon = 1e6;
  std::optional<double> warmup;  ///< defaults to 10% of the horizon
  int replications = 20;
  std::uint64_t seed = 1;
  unsigned threads = 0;

  [[nodiscard]] double warmup_or_default() const { return warmup.value_or(0.1 * horizon); }
  [[nodiscard]] SimConfig config_for(const ModelParams& params, bool trace = false) const;
};

/// One row of the reservoir-capacity table: lambda = 1, r+ = 1.
struct Table1Entry {
  double mu1;
  double mu2;
  double r_minus;
  std::optional<double> capacity;  ///< none = infinite reservoir
  double published;                ///< mean peak AoI, three decimals

  [[nodiscard]] ModelParams params() const;
};

[[nodiscard]] const std::vector<Table1Entry>& table1_entries();

struct Table1Result {
  Table1Entry entry;
  double computed;
  std::optional<Estimate> estimate;  ///< simulation rows only
};

/// Analytic value for infinite capacity, simulation otherwise.
[[nodiscard]] Table1Result evaluate_table1_entry(const Table1Entry& entry, const SimSettings& sim);

/// Cross-engine check: a closed form and the simulator on the same parameters.
struct ValidationCase {
  std::string label;
  ModelParams params;
  Metric metric;
  std::string closed_form;  ///< which analytic route produced the reference
};

[[nodiscard]] const std::vector<ValidationCase>& validation_panel();

struct ValidationOutcome {
  const ValidationCase* test_case;
  double analytic;
  Estimate simulated;
  [[nodiscard]] bool passed() const { return simulated.covers(analytic); }
};

[[nodiscard]] ValidationOutcome run_validation_case(const ValidationCase& c, const SimSettings& sim);

/// Runs the whole panel. Case i is simulated under its own seed derived from
/// sim.seed and i, so coverage outcomes of different cases are independent.
[[nodiscard]] std::vector<ValidationOutcome> run_validation_panel(const SimSettings& sim);

/// (r+, r-) and metric presets for the figure sweeps, with mu1 = 1.
struct SweepPreset {
  std::string name;
  double r_plus;
  double r_minus;
  Metric metric;
};

[[nodiscard]] std::optional<SweepPreset> find_preset(const std::string& name);

}  // namespace fluidaoi::cli
