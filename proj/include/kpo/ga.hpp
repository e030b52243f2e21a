#pragma once

// Generational GA on the knapsack benchmark with a pluggable environmental
// selection.

#include "kpo/knapsack.hpp"
#include "kpo/selection.hpp"
#include "kpo/types.hpp"

#include <cstdint>
#include <vector>

namespace kpo {

struct GaConfig {
  std::size_t pop_size = 250;
  std::size_t generations = 500;
  double mutation_prob = 0.01;  // per bit
  Selector selector = Selector::Nsga2;
  std::uint64_t seed = 0;
  /// Hypervolume is recorded every `hv_every` generations and at the last
  /// one; 0 records only the last.
  std::size_t hv_every = 1;
  /// Samples for Monte Carlo hypervolume, used above four objectives.
  std::size_t hv_samples = 100000;

  /// Throws std::invalid_argument when the configuration is unusable.
  void validate() const;
};

struct GenerationRecord {
  std::size_t gen = 0;
  double hypervolume = 0.0;
};

struct WallTimes {
  double total_seconds = 0.0;
  double selection_seconds = 0.0;
};

struct ExperimentResult {
  GaConfig config;
  std::size_t n_items = 0;
  std::size_t n_knapsacks = 0;
  std::uint64_t instance_seed = 0;
  std::vector<GenerationRecord> per_generation;
  std::vector<BitGenome> final_population;
  Points final_objectives;
  double final_hypervolume = 0.0;
  WallTimes wall_times;

  /// Distinct non-dominated rows of the final objectives.
  Points final_front() const;
};

/// Hypervolume as the GA reports it: exact up to four objectives, otherwise
/// Monte Carlo with a stream derived from `seed`.
double ga_hypervolume(const Points& objectives, std::size_t samples, std::uint64_t seed);

ExperimentResult evolve(const KnapsackInstance& instance, const GaConfig& config);

}  // namespace kpo
