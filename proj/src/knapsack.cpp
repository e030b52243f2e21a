#include "kpo/knapsack.hpp"

#include "kpo/rng.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

namespace kpo {

namespace {

void compute_repair_order(KnapsackInstance& inst) {
  std::vector<double> ratio(inst.n_items, 0.0);
  for (std::size_t j = 0; j < inst.n_items; ++j)
    for (std::size_t i = 0; i < inst.n_knapsacks; ++i)
      ratio[j] = std::max(ratio[j], static_cast<double>(inst.profits(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))) /
                                        inst.weights(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
  inst.repair_order.resize(inst.n_items);
  std::iota(inst.repair_order.begin(), inst.repair_order.end(), std::size_t{0});
  std::stable_sort(inst.repair_order.begin(), inst.repair_order.end(),
                   [&](std::size_t a, std::size_t b) { return ratio[a] < ratio[b]; });
}

}  // namespace

KnapsackInstance knapsack_generate(std::size_t n_items, std::size_t n_knapsacks, std::uint64_t seed) {
  if (n_items == 0 || n_knapsacks == 0) throw std::invalid_argument("knapsack_generate: need items and knapsacks");
  KnapsackInstance inst;
  inst.n_items = n_items;
  inst.n_knapsacks = n_knapsacks;
  inst.seed = seed;
  const auto k = static_cast<Eigen::Index>(n_knapsacks);
  const auto n = static_cast<Eigen::Index>(n_items);
  inst.profits.resize(k, n);
  inst.weights.resize(k, n);
  inst.capacities.resize(k);
  Rng rng(seed);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      inst.weights(i, j) = static_cast<int>(rng.uniform_int(kKnapsackMinValue, kKnapsackMaxValue));
      inst.profits(i, j) = static_cast<int>(rng.uniform_int(kKnapsackMinValue, kKnapsackMaxValue));
    }
    inst.capacities[i] = 0.5 * inst.weights.row(i).sum();
  }
  compute_repair_order(inst);
  return inst;
}

bool is_feasible(const BitGenome& genome, const KnapsackInstance& instance) {
  if (genome.size() != instance.n_items) throw DimensionError("is_feasible: genome length differs from item count");
  for (std::size_t i = 0; i < instance.n_knapsacks; ++i) {
    long load = 0;
    for (std::size_t j = 0; j < instance.n_items; ++j)
      if (genome[j]) load += instance.weights(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    if (static_cast<double>(load) > instance.capacities[static_cast<Eigen::Index>(i)]) return false;
  }
  return true;
}

BitGenome repair(BitGenome genome, const KnapsackInstance& instance) {
  if (genome.size() != instance.n_items) throw DimensionError("repair: genome length differs from item count");
  const auto k = static_cast<Eigen::Index>(instance.n_knapsacks);
  Eigen::VectorXd load = Eigen::VectorXd::Zero(k);
  for (std::size_t j = 0; j < instance.n_items; ++j)
    if (genome[j]) load += instance.weights.col(static_cast<Eigen::Index>(j)).cast<double>();
  auto violated = [&] { return (load.array() > instance.capacities.array()).any(); };
  for (std::size_t pos = 0; pos < instance.repair_order.size() && violated(); ++pos) {
    const std::size_t j = instance.repair_order[pos];
    if (!genome[j]) continue;
    genome[j] = 0;
    load -= instance.weights.col(static_cast<Eigen::Index>(j)).cast<double>();
  }
  return genome;
}

Vec evaluate(const BitGenome& genome, const KnapsackInstance& instance) {
  if (genome.size() != instance.n_items) throw DimensionError("evaluate: genome length differs from item count");
  Vec out = Vec::Zero(static_cast<Eigen::Index>(instance.n_knapsacks));
  for (std::size_t j = 0; j < instance.n_items; ++j)
    if (genome[j]) out += instance.profits.col(static_cast<Eigen::Index>(j)).cast<double>().transpose();
  return out;
}

void write_instance(std::ostream& os, const KnapsackInstance& instance) {
  os << "# knapsack n_items=" << instance.n_items << " n_knapsacks=" << instance.n_knapsacks
     << " seed=" << instance.seed << '\n';
  const auto old_precision = os.precision(17);
  os << "capacity";
  for (Eigen::Index i = 0; i < instance.capacities.size(); ++i) os << ',' << instance.capacities[i];
  os << '\n';
  for (Eigen::Index i = 0; i < instance.profits.rows(); ++i) {
    os << "profit";
    for (Eigen::Index j = 0; j < instance.profits.cols(); ++j) os << ',' << instance.profits(i, j);
    os << "\nweight";
    for (Eigen::Index j = 0; j < instance.weights.cols(); ++j) os << ',' << instance.weights(i, j);
    os << '\n';
  }
  os.precision(old_precision);
}

KnapsackInstance read_instance(std::istream& is) {
  KnapsackInstance inst;
  std::vector<double> capacities;
  std::vector<std::vector<int>> profits, weights;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto pos = line.find("seed=");
      if (pos != std::string::npos) inst.seed = std::stoull(line.substr(pos + 5));
      continue;
    }
    std::stringstream ss(line);
    std::string tag, cell;
    std::getline(ss, tag, ',');
    if (tag == "capacity") {
      while (std::getline(ss, cell, ',')) capacities.push_back(std::stod(cell));
    } else if (tag == "profit" || tag == "weight") {
      std::vector<int> row;
      while (std::getline(ss, cell, ',')) row.push_back(std::stoi(cell));
      (tag == "profit" ? profits : weights).push_back(std::move(row));
    } else {
      throw DataError("knapsack instance: unknown row tag '" + tag + "'");
    }
  }
  if (capacities.empty() || profits.size() != capacities.size() || weights.size() != capacities.size())
    throw DataError("knapsack instance: inconsistent row counts");
  inst.n_knapsacks = capacities.size();
  inst.n_items = profits.front().size();
  const auto k = static_cast<Eigen::Index>(inst.n_knapsacks);
  const auto n = static_cast<Eigen::Index>(inst.n_items);
  inst.profits.resize(k, n);
  inst.weights.resize(k, n);
  inst.capacities.resize(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    if (profits[ui].size() != inst.n_items || weights[ui].size() != inst.n_items)
      throw DataError("knapsack instance: ragged rows");
    inst.capacities[i] = capacities[ui];
    for (Eigen::Index j = 0; j < n; ++j) {
      inst.profits(i, j) = profits[ui][static_cast<std::size_t>(j)];
      inst.weights(i, j) = weights[ui][static_cast<std::size_t>(j)];
      if (inst.profits(i, j) <= 0 || inst.weights(i, j) <= 0)
        throw DataError("knapsack instance: profits and weights must be positive");
    }
  }
  compute_repair_order(inst);
  return inst;
}

}  // namespace kpo
