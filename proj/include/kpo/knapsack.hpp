#pragma once

// Multi-objective 0/1 knapsack benchmark with independent objectives:
// uniform integer profits and weights in [10, 100], capacities at half the
// total weight, greedy repair by profit/weight ratio.

#include "kpo/types.hpp"

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace kpo {

using BitGenome = std::vector<std::uint8_t>;

struct KnapsackInstance {
  std::size_t n_items = 0;
  std::size_t n_knapsacks = 0;
  Eigen::MatrixXi profits;      // n_knapsacks x n_items
  Eigen::MatrixXi weights;      // n_knapsacks x n_items
  Eigen::VectorXd capacities;   // n_knapsacks
  std::uint64_t seed = 0;

  /// Items in removal order for repair: ascending max_i profit_ij / weight_ij,
  /// ties by item index.
  std::vector<std::size_t> repair_order;
};

inline constexpr int kKnapsackMinValue = 10;
inline constexpr int kKnapsackMaxValue = 100;

KnapsackInstance knapsack_generate(std::size_t n_items, std::size_t n_knapsacks, std::uint64_t seed);

bool is_feasible(const BitGenome& genome, const KnapsackInstance& instance);

/// Removes selected items in repair order until every capacity holds.
BitGenome repair(BitGenome genome, const KnapsackInstance& instance);

/// Total profit per knapsack.
Vec evaluate(const BitGenome& genome, const KnapsackInstance& instance);

/// CSV bundle: a `capacity` header row followed by one `profit`/`weight` row
/// pair per knapsack.
void write_instance(std::ostream& os, const KnapsackInstance& instance);
KnapsackInstance read_instance(std::istream& is);

}  // namespace kpo
