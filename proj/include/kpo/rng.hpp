#pragma once

#include <cstdint>
#include <random>

namespace kpo {

/// 64-bit Mersenne Twister (std::mt19937_64, fully specified by the C++
/// standard) with distribution code written out here rather than taken from
/// <random>, whose distributions are implementation-defined. Same seed gives
/// the same stream on every platform.
class Rng {
public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Independent stream for a (seed, stream) pair; SplitMix64 mixes the two.
  static Rng stream(std::uint64_t seed, std::uint64_t stream_id) {
    return Rng(splitmix64(seed ^ splitmix64(stream_id + 0x632be59bd9b4e019ULL)));
  }

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [lo, hi], rejection sampling so there is no modulo bias.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
    if (range == 0) return static_cast<std::int64_t>(next());
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
    std::uint64_t r;
    do {
      r = next();
    } while (r >= limit);
    return lo + static_cast<std::int64_t>(r % range);
  }

  std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform_int(0, static_cast<std::int64_t>(n) - 1)); }

  bool bernoulli(double p) { return uniform() < p; }

  static std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

private:
  std::mt19937_64 engine_;
};

}  // namespace kpo
