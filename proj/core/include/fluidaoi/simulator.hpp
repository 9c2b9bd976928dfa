#pragma once

#include <cstdint>
#include <deque>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "fluidaoi/model.hpp"
#include "fluidaoi/rng.hpp"
#include "fluidaoi/statistics.hpp"

namespace fluidaoi {

struct SimConfig {
  ModelParams params;
  double horizon = 1e6;
  double warmup = 1e5;
  int replications = 20;
  std::uint64_t seed = 1;
  /// Starting level for an infinite reservoir; defaults to 10 / r-.
  /// A finite reservoir always starts full.
  std::optional<double> initial_level;
  /// Keep a PacketRecord for every arrival (memory grows with the horizon).
  bool record_trace = false;
  /// Worker threads for replications; 0 picks the hardware concurrency.
  unsigned threads = 0;
};

struct PacketRecord {
  double generation = 0.0;
  double departure = std::numeric_limits<double>::quiet_NaN();  ///< NaN if dropped or undelivered
  bool dropped = false;
};

/// Queue and reservoir state of one replication.
struct SimState {
  double clock = 0.0;
  long queue_len = 0;
  double reservoir_level = 0.0;
  double level_timestamp = 0.0;
  std::deque<double> generation_times;
  double last_delivered_generation = 0.0;
};

struct ReplicationResult {
  double mean_aoi = 0.0;
  double mean_peak_aoi = 0.0;
  double mean_sojourn = 0.0;
  double blocking_prob = 0.0;
  double reservoir_empty_fraction = 0.0;
  /// Mean peak AoI through E[A] + E[S] and through E[D] + E[S].
  double peak_via_interarrival = 0.0;
  double peak_via_interdeparture = 0.0;
  long offered = 0;
  long blocked = 0;
  long delivered = 0;
  std::vector<PacketRecord> trace;
};

struct SimEstimate {
  Estimate mean_aoi;
  Estimate mean_peak_aoi;
  Estimate mean_sojourn;
  Estimate blocking_prob;
  Estimate reservoir_empty_fraction;
  int replications_used = 0;
  std::vector<ReplicationResult> replications;  ///< in replication order
};

/// Throws InvalidConfig when the configuration cannot be simulated.
void validate(const SimConfig& config);

/// Runs all replications (concurrently when allowed) and reduces them in
/// replication order, so the result depends only on the configuration.
[[nodiscard]] SimEstimate simulate(const SimConfig& config);

/// One replication; independent of every other replication index.
[[nodiscard]] ReplicationResult run_replication(const SimConfig& config, int replication);

/// Brings the reservoir level to `to_time`: up at r+ while idle (capped at the
/// capacity), down at r- while busy (floored at zero). Returns the new level.
double advance_reservoir(SimState& state, double to_time, bool busy, const ModelParams& params);

/// Completion time of a service that starts at state.clock with the reservoir
/// at state.reservoir_level. A rate-mu1 candidate is drawn from `service`; if the
/// reservoir empties first, the residual is redrawn at rate mu2 from `regime`
/// starting at the emptying instant. A service starting on an empty reservoir
/// draws at rate mu2 from `service`.
[[nodiscard]] double next_service_completion(const SimState& state, const ModelParams& params,
                                             RandomStream& service, RandomStream& regime);

/// Both Little-type estimators of the mean peak AoI from a packet trace:
/// (mean interarrival + mean sojourn, mean interdeparture + mean sojourn), over
/// consecutive delivered packets. Dropped packets are skipped. Throws
/// InsufficientData with fewer than two deliveries.
[[nodiscard]] std::pair<double, double> interdeparture_crosscheck(std::span<const PacketRecord> trace);

}  // namespace fluidaoi
