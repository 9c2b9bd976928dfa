#include "fluidaoi/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "fluidaoi/errors.hpp"

namespace fluidaoi {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Length of [a, b] inside [lo, hi].
double overlap(double a, double b, double lo, double hi) {
  return std::max(0.0, std::min(b, hi) - std::max(a, lo));
}

// Integral of the unit-slope age t - u over [a, b].
double age_area(double a, double b, double u) { return 0.5 * ((a - u) + (b - u)) * (b - a); }

class Replication {
 public:
  Replication(const SimConfig& config, int index)
      : config_(config),
        params_(config.params),
        arrivals_(config.seed, static_cast<std::uint64_t>(index), StreamId::Arrival),
        service_(config.seed, static_cast<std::uint64_t>(index), StreamId::Service),
        regime_(config.seed, static_cast<std::uint64_t>(index), StreamId::Regime) {
    state_.reservoir_level = params_.reservoir().value_or(
        config.initial_level.value_or(10.0 / params_.r_minus()));
  }

  ReplicationResult run() {
    const double horizon = config_.horizon;
    double next_arrival = arrivals_.exponential(params_.lambda());
    double completion = kInf;

    while (true) {
      const bool arrival_first = next_arrival <= completion;  // ties: arrival first
      const double t = arrival_first ? next_arrival : completion;
      if (t > horizon) break;
      reconcile(t);
      if (arrival_first) {
        on_arrival(t);
        if (state_.queue_len == 1 && completion == kInf) {
          completion = next_service_completion(state_, params_, service_, regime_);
        }
        next_arrival = t + arrivals_.exponential(params_.lambda());
      } else {
        on_departure(t);
        completion = state_.queue_len > 0
                         ? next_service_completion(state_, params_, service_, regime_)
                         : kInf;
      }
    }
    reconcile(horizon);
    accumulate_age(horizon);
    return finish();
  }

 private:
  void reconcile(double t) {
    const bool busy = state_.queue_len > 0;
    if (busy) {
      const double empty_from = state_.level_timestamp + state_.reservoir_level / params_.r_minus();
      empty_time_ += overlap(empty_from, t, config_.warmup, config_.horizon);
    }
    advance_reservoir(state_, t, busy, params_);
    state_.clock = t;
  }

  void on_arrival(double t) {
    const bool counted = t >= config_.warmup;
    if (counted) ++result_.offered;
    const auto cap = params_.buffer();
    if (cap && state_.queue_len >= *cap) {
      if (counted) ++result_.blocked;
      if (config_.record_trace) result_.trace.push_back({t, std::numeric_limits<double>::quiet_NaN(), true});
      return;
    }
    state_.generation_times.push_back(t);
    if (config_.record_trace) {
      trace_index_.push_back(result_.trace.size());
      result_.trace.push_back({t, std::numeric_limits<double>::quiet_NaN(), false});
    }
    ++state_.queue_len;
  }

  void on_departure(double t) {
    const double gen = state_.generation_times.front();
    state_.generation_times.pop_front();
    --state_.queue_len;
    if (config_.record_trace) {
      result_.trace[trace_index_.front()].departure = t;
      trace_index_.pop_front();
    }

    accumulate_age(t);
    if (t >= config_.warmup) {
      peak_sum_ += t - state_.last_delivered_generation;
      sojourn_sum_ += t - gen;
      ++result_.delivered;
      if (have_previous_) {
        interarrival_sum_ += gen - prev_generation_;
        interdeparture_sum_ += t - prev_departure_;
        pair_sojourn_sum_ += t - gen;
        prev_sojourn_sum_ += prev_departure_ - prev_generation_;
        ++pairs_;
      }
    }
    state_.last_delivered_generation = gen;
    prev_generation_ = gen;
    prev_departure_ = t;
    have_previous_ = true;
  }

  void accumulate_age(double t) {
    const double from = std::max(age_mark_, config_.warmup);
    if (t > from) age_area_ += age_area(from, t, state_.last_delivered_generation);
    age_mark_ = t;
  }

  ReplicationResult finish() {
    const double window = config_.horizon - config_.warmup;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const auto delivered = static_cast<double>(result_.delivered);
    result_.mean_aoi = age_area_ / window;
    result_.mean_peak_aoi = result_.delivered > 0 ? peak_sum_ / delivered : nan;
    result_.mean_sojourn = result_.delivered > 0 ? sojourn_sum_ / delivered : nan;
    result_.blocking_prob =
        result_.offered > 0 ? static_cast<double>(result_.blocked) / static_cast<double>(result_.offered)
                            : 0.0;
    result_.reservoir_empty_fraction = empty_time_ / window;
    if (pairs_ > 0) {
      const auto pairs = static_cast<double>(pairs_);
      result_.peak_via_interarrival = (interarrival_sum_ + pair_sojourn_sum_) / pairs;
      result_.peak_via_interdeparture = (interdeparture_sum_ + prev_sojourn_sum_) / pairs;
    } else {
      result_.peak_via_interarrival = nan;
      result_.peak_via_interdeparture = nan;
    }
    return std::move(result_);
  }

  const SimConfig& config_;
  const ModelParams& params_;
  RandomStream arrivals_;
  RandomStream service_;
  RandomStream regime_;
  SimState state_;
  ReplicationResult result_;
  std::deque<std::size_t> trace_index_;

  double age_mark_ = 0.0;
  double age_area_ = 0.0;
  double peak_sum_ = 0.0;
  double sojourn_sum_ = 0.0;
  double empty_time_ = 0.0;
  double interarrival_sum_ = 0.0;
  double interdeparture_sum_ = 0.0;
  double pair_sojourn_sum_ = 0.0;
  double prev_sojourn_sum_ = 0.0;
  double prev_generation_ = 0.0;
  double prev_departure_ = 0.0;
  bool have_previous_ = false;
  long pairs_ = 0;
};

}  // namespace

void validate(const SimConfig& config) {
  if (!std::isfinite(config.horizon) || !(config.horizon > 0.0))
    throw InvalidConfig("horizon must be positive and finite");
  if (!(config.warmup >= 0.0) || !(config.warmup < config.horizon))
    throw InvalidConfig("warmup must satisfy 0 <= warmup < horizon");
  if (config.replications < 1) throw InvalidConfig("replications must be at least 1");
  if (!(config.params.mu2() > 0.0))
    throw InvalidConfig("simulation requires mu2 > 0; with mu2 = 0 an empty reservoir never recovers");
  if (config.initial_level && !(*config.initial_level >= 0.0 && std::isfinite(*config.initial_level)))
    throw InvalidConfig("initial reservoir level must be nonnegative and finite");
}

double advance_reservoir(SimState& state, double to_time, bool busy, const ModelParams& params) {
  assert(to_time >= state.level_timestamp);
  const double dt = to_time - state.level_timestamp;
  if (busy) {
    state.reservoir_level = std::max(0.0, state.reservoir_level - params.r_minus() * dt);
  } else {
    state.reservoir_level += params.r_plus() * dt;
    if (const auto cap = params.reservoir()) state.reservoir_level = std::min(*cap, state.reservoir_level);
  }
  state.level_timestamp = to_time;
  assert(state.reservoir_level >= 0.0 &&
         state.reservoir_level <= params.reservoir().value_or(kInf));
  return state.reservoir_level;
}

double next_service_completion(const SimState& state, const ModelParams& params,
                               RandomStream& service, RandomStream& regime) {
  if (state.reservoir_level <= 0.0) return state.clock + service.exponential(params.mu2());
  const double candidate = service.exponential(params.mu1());
  const double until_empty = state.reservoir_level / params.r_minus();
  if (candidate <= until_empty) return state.clock + candidate;
  return state.clock + until_empty + regime.exponential(params.mu2());
}

ReplicationResult run_replication(const SimConfig& config, int replication) {
  validate(config);
  return Replication(config, replication).run();
}

SimEstimate simulate(const SimConfig& config) {
  validate(config);
  const auto reps = static_cast<std::size_t>(config.replications);
  std::vector<ReplicationResult> results(reps);

  unsigned workers = config.threads != 0 ? config.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(reps));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < reps; i = next++) {
      try {
        results[i] = Replication(config, static_cast<int>(i)).run();
      } catch (...) {
        const std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);

  auto column = [&](double ReplicationResult::*field) {
    std::vector<double> v;
    v.reserve(reps);
    for (const auto& r : results) v.push_back(r.*field);
    return student_t_interval(v);
  };
  SimEstimate est;
  est.mean_aoi = column(&ReplicationResult::mean_aoi);
  est.mean_peak_aoi = column(&ReplicationResult::mean_peak_aoi);
  est.mean_sojourn = column(&ReplicationResult::mean_sojourn);
  est.blocking_prob = column(&ReplicationResult::blocking_prob);
  est.reservoir_empty_fraction = column(&ReplicationResult::reservoir_empty_fraction);
  est.replications_used = config.replications;
  est.replications = std::move(results);
  return est;
}

std::pair<double, double> interdeparture_crosscheck(std::span<const PacketRecord> trace) {
  const PacketRecord* prev = nullptr;
  double interarrival = 0.0;
  double interdeparture = 0.0;
  double sojourn = 0.0;
  double prev_sojourn = 0.0;
  long pairs = 0;
  for (const auto& rec : trace) {
    if (rec.dropped || !std::isfinite(rec.departure)) continue;
    if (prev != nullptr) {
      interarrival += rec.generation - prev->generation;
      interdeparture += rec.departure - prev->departure;
      sojourn += rec.departure - rec.generation;
      prev_sojourn += prev->departure - prev->generation;
      ++pairs;
    }
    prev = &rec;
  }
  if (pairs == 0) throw InsufficientData("peak AoI cross-check needs at least two deliveries");
  const auto n = static_cast<double>(pairs);
  return {interarrival / n + sojourn / n, interdeparture / n + prev_sojourn / n};
}

}  // namespace fluidaoi
