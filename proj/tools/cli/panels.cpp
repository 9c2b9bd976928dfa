#include "cli/panels.hpp"

#include "cli/sim_metrics.hpp"
#include "fluidaoi/analytic.hpp"
#include "fluidaoi/rng.hpp"
#include "fluidaoi/simulator.hpp"
#include "fluidaoi/stationary.hpp"

namespace fluidaoi::cli {

SimConfig SimSettings::config_for(const ModelParams& params, bool trace) const {
  return {.params = params,
          .horizon = horizon,
          .warmup = warmup_or_default(),
          .replications = replications,
          .seed = seed,
          .initial_level = std::nullopt,
          .record_trace = trace,
          .threads = threads};
}

ModelParams Table1Entry::params() const {
  return ModelParams::make({.lambda = 1.0, .mu1 = mu1, .mu2 = mu2, .r_plus = 1.0, .r_minus = r_minus},
                           std::nullopt, capacity);
}

const std::vector<Table1Entry>& table1_entries() {
  static const std::vector<Table1Entry> entries = {
      {2.0, 1.5, 2.0, 1.0, 2.887},  {2.0, 1.5, 2.0, 2.0, 2.826},
      {2.0, 1.5, 2.0, 5.0, 2.744},  {2.0, 1.5, 2.0, std::nullopt, 2.700},
      {1.5, 1.1, 1.0, 2.0, 10.507}, {1.5, 1.1, 1.0, 3.0, 10.373},
      {1.5, 1.1, 1.0, 5.0, 10.162}, {1.5, 1.1, 1.0, std::nullopt, 9.857},
      {1.5, 1.1, 2.0, 2.0, 10.789}, {1.5, 1.1, 2.0, 3.0, 10.746},
      {1.5, 1.1, 2.0, 5.0, 10.693}, {1.5, 1.1, 2.0, std::nullopt, 10.667},
  };
  return entries;
}

Table1Result evaluate_table1_entry(const Table1Entry& entry, const SimSettings& sim) {
  const auto params = entry.params();
  if (!entry.capacity) return {entry, mean_peak_aoi_inf(params), std::nullopt};
  const auto est = simulate(sim.config_for(params));
  return {entry, est.mean_peak_aoi.point, est.mean_peak_aoi};
}

namespace {

ValidationCase make_case(std::string label, Rates rates, std::optional<int> buffer, Metric metric,
                         std::string closed_form) {
  return {std::move(label), ModelParams::make(rates, buffer), metric, std::move(closed_form)};
}

}  // namespace

const std::vector<ValidationCase>& validation_panel() {
  // Five cases per closed form.
  static const std::vector<ValidationCase> panel = {
      make_case("unregulated-0.5", {0.5, 1.0, 1.0, 1.0, 2.0}, std::nullopt, Metric::MeanAoi, "mean-aoi-inf"),
      make_case("unregulated-0.6", {0.6, 1.0, 1.0, 1.0, 4.0}, std::nullopt, Metric::MeanAoi, "mean-aoi-inf"),
      make_case("table1-a", {1.0, 2.0, 1.5, 1.0, 2.0}, std::nullopt, Metric::MeanAoi, "mean-aoi-inf"),
      make_case("energy-poor-0.5", {0.5, 1.0, 0.8, 1.0, 4.0}, std::nullopt, Metric::MeanAoi, "mean-aoi-inf"),
      make_case("energy-poor-0.34", {0.34, 1.0, 2.0 / 3.0, 1.0, 4.0}, std::nullopt, Metric::MeanAoi,
                "mean-aoi-inf"),

      make_case("table1-a", {1.0, 2.0, 1.5, 1.0, 2.0}, std::nullopt, Metric::PeakAoi, "peak-aoi-inf"),
      make_case("table1-b", {1.0, 1.5, 1.1, 1.0, 1.0}, std::nullopt, Metric::PeakAoi, "peak-aoi-inf"),
      make_case("table1-c", {1.0, 1.5, 1.1, 1.0, 2.0}, std::nullopt, Metric::PeakAoi, "peak-aoi-inf"),
      make_case("energy-poor-0.5", {0.5, 1.0, 0.8, 1.0, 4.0}, std::nullopt, Metric::PeakAoi, "peak-aoi-inf"),
      make_case("mid-0.4", {0.4, 1.0, 0.5, 1.0, 3.0}, std::nullopt, Metric::PeakAoi, "peak-aoi-inf"),

      make_case("mm11-2.5", {1.0, 2.0, 1.0, 1.0, 4.0}, 1, Metric::PeakAoi, "mm11"),
      make_case("mm11-unregulated", {1.0, 1.0, 1.0, 1.0, 2.0}, 1, Metric::PeakAoi, "mm11"),
      make_case("mm11-0.6", {0.6, 1.0, 0.5, 1.0, 2.0}, 1, Metric::PeakAoi, "mm11"),
      make_case("mm11-2.0", {2.0, 1.0, 1.0, 1.0, 2.0}, 1, Metric::PeakAoi, "mm11"),
      make_case("mm11-0.8", {0.8, 1.0, 0.3, 1.0, 3.0}, 1, Metric::PeakAoi, "mm11"),

      make_case("n2-1.0", {1.0, 1.0, 0.8, 1.0, 2.0}, 2, Metric::PeakAoi, "stationary-solver"),
      make_case("n2-0.6", {0.6, 1.0, 0.5, 1.0, 2.0}, 2, Metric::PeakAoi, "stationary-solver"),
      make_case("n3-0.5", {0.5, 1.0, 0.6, 1.0, 3.0}, 3, Metric::PeakAoi, "stationary-solver"),
      make_case("n2-0.4", {0.4, 1.0, 0.7, 1.0, 2.0}, 2, Metric::PeakAoi, "stationary-solver"),
      make_case("n3-1.2", {1.2, 1.0, 0.5, 1.0, 1.0}, 3, Metric::PeakAoi, "stationary-solver"),
  };
  return panel;
}

ValidationOutcome run_validation_case(const ValidationCase& c, const SimSettings& sim) {
  const double analytic = c.closed_form == "mm11" ? mean_peak_aoi_mm11(c.params)
                                                  : evaluate_analytic(c.params, c.metric);
  return {&c, analytic, sim_metric(simulate(sim.config_for(c.params)), c.metric)};
}

std::vector<ValidationOutcome> run_validation_panel(const SimSettings& sim) {
  std::vector<ValidationOutcome> outcomes;
  const auto& panel = validation_panel();
  for (std::size_t i = 0; i < panel.size(); ++i) {
    SimSettings own = sim;
    own.seed = splitmix64(splitmix64(sim.seed) + i);
    outcomes.push_back(run_validation_case(panel[i], own));
  }
  return outcomes;
}

std::optional<SweepPreset> find_preset(const std::string& name) {
  static const std::vector<SweepPreset> presets = {
      {"fig3a", 1.0, 4.0, Metric::MeanAoi}, {"fig3b", 1.0, 3.0, Metric::MeanAoi},
      {"fig3c", 1.0, 2.0, Metric::MeanAoi}, {"fig3d", 2.0, 3.0, Metric::MeanAoi},
      {"fig4a", 1.0, 4.0, Metric::PeakAoi}, {"fig4b", 1.0, 3.0, Metric::PeakAoi},
      {"fig4c", 1.0, 2.0, Metric::PeakAoi}, {"fig4d", 2.0, 3.0, Metric::PeakAoi},
  };
  for (const auto& p : presets) {
    if (p.name == name) return p;
  }
  return std::nullopt;
}

}  // namespace fluidaoi::cli
