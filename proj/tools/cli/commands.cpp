#include "cli/commands.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <set>
#include <vector>

#include "cli/csv.hpp"
#include "cli/panels.hpp"
#include "cli/sim_metrics.hpp"
#include "fluidaoi/errors.hpp"
#include "fluidaoi/optimize.hpp"
#include "fluidaoi/simulator.hpp"

namespace fluidaoi::cli {

namespace {

constexpr double kEndpointTrim = 1e-3;

struct Options {
  std::optional<double> lambda;
  std::optional<double> mu1;
  std::optional<double> mu2;
  std::optional<double> r_plus;
  std::optional<double> r_minus;
  std::string buffer = "inf";
  std::string reservoir = "inf";
  std::vector<std::string> metrics;
  std::vector<std::string> engines;
  std::string out;
  SimSettings sim;

  std::optional<double> start;
  std::optional<double> stop;
  double step = 0.01;
  bool find_min = false;
  std::string preset;

  std::string trace;
};

enum class Engine { Analytic, Simulation };

std::string_view engine_name(Engine e) { return e == Engine::Analytic ? "analytic" : "simulation"; }

std::optional<int> parse_buffer(const std::string& text) {
  if (text == "inf") return std::nullopt;
  try {
    std::size_t used = 0;
    const int n = std::stoi(text, &used);
    if (used == text.size() && n >= 1) return n;
  } catch (const std::exception&) {
  }
  throw InvalidParams("--buffer expects a positive integer or 'inf', got '" + text + "'");
}

std::optional<double> parse_reservoir(const std::string& text) {
  if (text == "inf") return std::nullopt;
  try {
    std::size_t used = 0;
    const double d = std::stod(text, &used);
    if (used == text.size() && d > 0.0 && std::isfinite(d)) return d;
  } catch (const std::exception&) {
  }
  throw InvalidParams("--reservoir expects a positive number or 'inf', got '" + text + "'");
}

double require(const std::optional<double>& v, const char* flag) {
  if (!v) throw InvalidParams(std::string("missing required flag ") + flag);
  return *v;
}

ModelParams build_params(const Options& o, std::optional<double> lambda_override = std::nullopt) {
  const Rates rates{.lambda = lambda_override ? *lambda_override : require(o.lambda, "--lambda"),
                    .mu1 = require(o.mu1, "--mu1"),
                    .mu2 = require(o.mu2, "--mu2"),
                    .r_plus = require(o.r_plus, "--r-plus"),
                    .r_minus = require(o.r_minus, "--r-minus")};
  return ModelParams::make(rates, parse_buffer(o.buffer), parse_reservoir(o.reservoir));
}

// Requested metrics, deduplicated and in name order.
std::vector<Metric> parse_metrics(const std::vector<std::string>& names, Metric fallback) {
  std::set<std::string> sorted(names.begin(), names.end());
  if (sorted.empty()) sorted.insert(std::string(metric_name(fallback)));
  std::vector<Metric> out;
  for (const auto& n : sorted) {
    const auto m = parse_metric(n);
    if (!m) throw InvalidParams("unknown metric '" + n + "' (mean-aoi, peak-aoi, sojourn, blocking)");
    out.push_back(*m);
  }
  return out;
}

std::vector<Engine> parse_engines(const std::vector<std::string>& names) {
  bool analytic = names.empty();
  bool simulation = false;
  for (const auto& n : names) {
    if (n == "analytic") {
      analytic = true;
    } else if (n == "simulation") {
      simulation = true;
    } else {
      throw InvalidParams("unknown engine '" + n + "' (analytic, simulation)");
    }
  }
  std::vector<Engine> out;
  if (analytic) out.push_back(Engine::Analytic);
  if (simulation) out.push_back(Engine::Simulation);
  return out;
}

CsvRow base_row(const ModelParams& p, std::string_view metric, Engine engine) {
  CsvRow row;
  row.rates = p.rates();
  row.buffer = p.buffer();
  row.reservoir = p.reservoir();
  row.metric = std::string(metric);
  row.engine = std::string(engine_name(engine));
  return row;
}

void fill_estimate(CsvRow& row, const Estimate& e) {
  row.value = e.point;
  row.ci_low = e.low();
  row.ci_high = e.high();
}

// Where a grid point has a stationary regime. The finite-reservoir model is
// only constrained by the queue itself.
bool point_feasible(const ModelParams& p) {
  if (p.infinite_reservoir()) return analytic_feasible(p);
  if (!(p.mu2() > 0.0)) return false;
  return !p.infinite_buffer() || p.lambda() < p.mu2();
}

/// Output sink: the --out file if given, otherwise the caller's stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary | std::ios::trunc);
      if (!file_) throw InvalidParams("cannot open output file '" + path + "'");
      stream_ = &file_;
    }
  }
  std::ostream& get() { return *stream_; }
  [[nodiscard]] bool is_file() const { return file_.is_open(); }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

int cmd_eval(const Options& o, std::ostream& out) {
  const auto params = build_params(o);
  const auto metrics = parse_metrics(o.metrics, Metric::PeakAoi);
  const auto engines = parse_engines(o.engines);

  std::optional<SimEstimate> sim;
  std::vector<CsvRow> rows;
  for (Metric m : metrics) {
    for (Engine e : engines) {
      CsvRow row = base_row(params, metric_name(m), e);
      if (e == Engine::Analytic) {
        row.value = evaluate_analytic(params, m);
      } else {
        if (!sim) sim = simulate(o.sim.config_for(params));
        fill_estimate(row, sim_metric(*sim, m));
      }
      rows.push_back(std::move(row));
    }
  }
  Sink sink(o.out, out);
  write_header(sink.get());
  for (const auto& r : rows) write_row(sink.get(), r);
  return kOk;
}

struct Grid {
  double start;
  double stop;
  double step;
  [[nodiscard]] long size() const {
    return static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
  }
  [[nodiscard]] double at(long i) const { return start + static_cast<double>(i) * step; }
};

Grid sweep_grid(const Options& o, const ModelParams& base) {
  double low = 0.0;
  double high = base.mu1();
  if (base.infinite_reservoir()) {
    const auto interval = feasible_lambda_interval(base);
    low = interval.low;
    high = interval.high.value_or(base.mu1());
  } else if (base.infinite_buffer()) {
    high = base.mu2();
  }
  Grid g{o.start.value_or(low + kEndpointTrim), o.stop.value_or(high - kEndpointTrim), o.step};
  if (!(g.step > 0.0)) throw InvalidParams("--step must be positive");
  if (!(g.start > 0.0) || !(g.start < g.stop)) {
    throw InvalidParams("lambda grid needs 0 < start < stop (got start=" + format_real(g.start) +
                        ", stop=" + format_real(g.stop) + ")");
  }
  return g;
}

int cmd_sweep(Options o, std::ostream& out, std::ostream& err) {
  Metric fallback = Metric::PeakAoi;
  if (!o.preset.empty()) {
    const auto preset = find_preset(o.preset);
    if (!preset) throw InvalidParams("unknown preset '" + o.preset + "' (fig3a..fig3d, fig4a..fig4d)");
    if (!o.mu1) o.mu1 = 1.0;
    if (!o.r_plus) o.r_plus = preset->r_plus;
    if (!o.r_minus) o.r_minus = preset->r_minus;
    fallback = preset->metric;
  }
  const auto base = build_params(o, 1.0);
  const auto metrics = parse_metrics(o.metrics, fallback);
  const auto engines = parse_engines(o.engines);
  if (o.find_min && metrics.size() != 1) throw InvalidParams("--find-min needs exactly one metric");

  std::optional<Grid> grid;
  try {
    grid = sweep_grid(o, base);
  } catch (const EmptyFeasibleRegion&) {
    if (!o.start || !o.stop) throw;
    grid = Grid{*o.start, *o.stop, o.step};
  }

  Sink sink(o.out, out);
  auto& os = sink.get();
  write_header(os);
  bool numerical_failure = false;
  for (long i = 0; i < grid->size(); ++i) {
    const auto params = base.with_lambda(grid->at(i));
    const bool feasible = point_feasible(params);
    std::optional<SimEstimate> sim;
    for (Metric m : metrics) {
      for (Engine e : engines) {
        CsvRow row = base_row(params, metric_name(m), e);
        if (!feasible) {
          row.status = "infeasible";
        } else if (e == Engine::Analytic) {
          try {
            row.value = evaluate_analytic(params, m);
          } catch (const StabilityViolation&) {
            row.status = "infeasible";
          } catch (const InvalidParams&) {
            row.status = "unsupported";
          } catch (const Error& ex) {
            row.status = "error";
            numerical_failure = true;
            err << "lambda=" << format_real(params.lambda()) << ": " << ex.what() << '\n';
          }
        } else {
          if (!sim) sim = simulate(o.sim.config_for(params));
          fill_estimate(row, sim_metric(*sim, m));
        }
        write_row(os, row);
      }
    }
  }

  if (o.find_min) {
    const auto best = find_optimal_lambda(base, grid->start, grid->stop, metrics.front());
    CsvRow row = base_row(base.with_lambda(best.lambda), metric_name(metrics.front()), Engine::Analytic);
    row.value = best.value;
    row.status = "argmin";
    write_row(os, row);
  }
  return numerical_failure ? kNumericalFailure : kOk;
}

int cmd_simulate(const Options& o, std::ostream& out) {
  const auto params = build_params(o);
  const auto est = simulate(o.sim.config_for(params, !o.trace.empty()));

  Sink sink(o.out, out);
  write_header(sink.get());
  const std::pair<const char*, const Estimate*> columns[] = {
      {"blocking", &est.blocking_prob},   {"mean-aoi", &est.mean_aoi},
      {"peak-aoi", &est.mean_peak_aoi},   {"reservoir-empty", &est.reservoir_empty_fraction},
      {"sojourn", &est.mean_sojourn},
  };
  for (const auto& [name, e] : columns) {
    CsvRow row = base_row(params, name, Engine::Simulation);
    fill_estimate(row, *e);
    write_row(sink.get(), row);
  }

  if (!o.trace.empty()) {
    std::ofstream trace(o.trace, std::ios::binary | std::ios::trunc);
    if (!trace) throw InvalidParams("cannot open trace file '" + o.trace + "'");
    trace << "replication,index,generation,departure,dropped\n";
    for (std::size_t r = 0; r < est.replications.size(); ++r) {
      const auto& records = est.replications[r].trace;
      for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& rec = records[i];
        trace << r << ',' << i << ',' << format_real(rec.generation) << ','
              << (std::isfinite(rec.departure) ? format_real(rec.departure) : std::string()) << ','
              << (rec.dropped ? 1 : 0) << '\n';
      }
    }
  }
  return kOk;
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

int cmd_table1(const Options& o, std::ostream& out) {
  std::vector<Table1Result> results;
  for (const auto& entry : table1_entries()) results.push_back(evaluate_table1_entry(entry, o.sim));

  char line[160];
  out << "Mean peak AoI for different reservoir capacities (lambda=1, r+=1)\n";
  std::snprintf(line, sizeof line, "%5s %5s %5s %5s %9s %9s %8s %8s  %s\n", "mu1", "mu2", "r-", "D",
                "published", "computed", "ci+-", "|diff|", "engine");
  out << line;
  for (const auto& r : results) {
    const auto& e = r.entry;
    std::snprintf(line, sizeof line, "%5s %5s %5s %5s %9.3f %9.3f %8s %8.3f  %s\n",
                  format_real(e.mu1).c_str(), format_real(e.mu2).c_str(),
                  format_real(e.r_minus).c_str(), e.capacity ? format_real(*e.capacity).c_str() : "inf",
                  e.published, r.computed, r.estimate ? fixed(r.estimate->ci_half_width, 3).c_str() : "-",
                  std::abs(r.computed - e.published), r.estimate ? "simulation" : "analytic");
    out << line;
  }

  Sink sink(o.out, out);
  if (!sink.is_file()) out << '\n';
  write_header(sink.get());
  for (const auto& r : results) {
    CsvRow row = base_row(r.entry.params(), "peak-aoi", r.estimate ? Engine::Simulation : Engine::Analytic);
    if (r.estimate) {
      fill_estimate(row, *r.estimate);
    } else {
      row.value = r.computed;
    }
    write_row(sink.get(), row);
  }
  return kOk;
}

int cmd_validate(const Options& o, std::ostream& out) {
  const auto outcomes = run_validation_panel(o.sim);

  int passed = 0;
  char line[256];
  for (const auto& v : outcomes) {
    passed += v.passed() ? 1 : 0;
    std::snprintf(line, sizeof line, "%s %-18s %-18s %-8s analytic=%.6f sim=%.6f +- %.6f (diff %+.6f)\n",
                  v.passed() ? "PASS" : "FAIL", v.test_case->label.c_str(),
                  v.test_case->closed_form.c_str(), std::string(metric_name(v.test_case->metric)).c_str(),
                  v.analytic, v.simulated.point, v.simulated.ci_half_width,
                  v.simulated.point - v.analytic);
    out << line;
  }
  out << "passed " << passed << '/' << outcomes.size() << '\n';

  if (!o.out.empty()) {
    Sink sink(o.out, out);
    write_header(sink.get());
    for (const auto& v : outcomes) {
      const auto& p = v.test_case->params;
      CsvRow a = base_row(p, metric_name(v.test_case->metric), Engine::Analytic);
      a.value = v.analytic;
      write_row(sink.get(), a);
      CsvRow s = base_row(p, metric_name(v.test_case->metric), Engine::Simulation);
      fill_estimate(s, v.simulated);
      s.status = v.passed() ? "ok" : "mismatch";
      write_row(sink.get(), s);
    }
  }
  return passed == static_cast<int>(outcomes.size()) ? kOk : kValidationFailed;
}

void add_common_flags(CLI::App& app, Options& o) {
  app.add_option("--lambda", o.lambda, "packet arrival rate");
  app.add_option("--mu1", o.mu1, "service rate with a non-empty reservoir");
  app.add_option("--mu2", o.mu2, "service rate with an empty reservoir");
  app.add_option("--r-plus", o.r_plus, "reservoir fill rate while idle");
  app.add_option("--r-minus", o.r_minus, "reservoir depletion rate while busy");
  app.add_option("--buffer", o.buffer, "packets in system including service: N or inf")->capture_default_str();
  app.add_option("--reservoir", o.reservoir, "reservoir capacity: D or inf")->capture_default_str();
  app.add_option("--metric", o.metrics, "mean-aoi, peak-aoi, sojourn, blocking (comma separated)")
      ->delimiter(',');
  app.add_option("--engine", o.engines, "analytic, simulation (comma separated)")->delimiter(',');
  app.add_option("--out", o.out, "write CSV to this file instead of stdout");
  app.add_option("--seed", o.sim.seed, "master seed")->capture_default_str();
  app.add_option("--horizon", o.sim.horizon, "simulated time per replication")->capture_default_str();
  app.add_option("--warmup", o.sim.warmup, "discarded initial period (default 10% of horizon)");
  app.add_option("--reps", o.sim.replications, "replications")->capture_default_str();
  app.add_option("--threads", o.sim.threads, "worker threads, 0 = all cores")->capture_default_str();
  app.set_config("--config", "", "key=value file with the flags above; command-line flags win");
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Age of Information of a fluid-reservoir regulated queue"};
  app.name("fluidaoi");
  app.require_subcommand(1);
  app.fallthrough();

  Options o;
  add_common_flags(app, o);

  auto* eval = app.add_subcommand("eval", "evaluate metrics at one parameter point");
  auto* sweep = app.add_subcommand("sweep", "sweep lambda over a grid");
  sweep->add_option("--start", o.start, "first lambda (default: feasible lower end + 1e-3)");
  sweep->add_option("--stop", o.stop, "last lambda (default: feasible upper end - 1e-3)");
  sweep->add_option("--step", o.step, "grid step")->capture_default_str();
  sweep->add_flag("--find-min", o.find_min, "append the lambda minimizing the metric");
  sweep->add_option("--preset", o.preset, "fig3a..fig3d, fig4a..fig4d");
  auto* simulate_cmd = app.add_subcommand("simulate", "run the discrete-event simulator");
  simulate_cmd->add_option("--trace", o.trace, "per-replication packet trace CSV");
  auto* table1 = app.add_subcommand("table1", "reproduce the reservoir-capacity table");
  auto* validate_cmd = app.add_subcommand("validate", "check simulation CIs against closed forms");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (eval->parsed()) return cmd_eval(o, out);
    if (sweep->parsed()) return cmd_sweep(o, out, err);
    if (simulate_cmd->parsed()) return cmd_simulate(o, out);
    if (table1->parsed()) return cmd_table1(o, out);
    if (validate_cmd->parsed()) return cmd_validate(o, out);
  } catch (const InvalidParams& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const InvalidConfig& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const StabilityViolation& e) {
    err << "unstable: " << e.what() << '\n';
    return kUnstable;
  } catch (const EmptyFeasibleRegion& e) {
    err << "unstable: " << e.what() << '\n';
    return kUnstable;
  } catch (const Error& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  }
  return kUsageError;
}

}  // namespace fluidaoi::cli
