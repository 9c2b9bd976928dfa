#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace fluidaoi {

/// Independent random streams used by one replication. Separate streams keep
/// arrivals and per-packet service draws aligned across configurations that
/// differ only in the reservoir (common random numbers).
enum class StreamId : std::uint64_t { Arrival = 1, Service = 2, Regime = 3 };

[[nodiscard]] constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of stream `id` of replication `replication` under `master`.
[[nodiscard]] constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t replication,
                                                  StreamId id) noexcept {
  return splitmix64(splitmix64(splitmix64(master) ^ replication) ^ static_cast<std::uint64_t>(id));
}

/// Exponential variates from a 64-bit Mersenne Twister. The transform is done
/// here rather than by std::exponential_distribution so results are identical
/// across standard library implementations.
class RandomStream {
 public:
  RandomStream(std::uint64_t master, std::uint64_t replication, StreamId id)
      : engine_(derive_seed(master, replication, id)) {}

  /// Uniform on (0, 1].
  double uniform() { return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53; }

  double exponential(double rate) { return -std::log(uniform()) / rate; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace fluidaoi
