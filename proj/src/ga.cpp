#include "kpo/ga.hpp"

#include "kpo/metrics.hpp"
#include "kpo/rng.hpp"

#include <chrono>
#include <stdexcept>

namespace kpo {

void GaConfig::validate() const {
  if (pop_size < 2 || pop_size % 2 != 0) throw std::invalid_argument("pop_size must be even and at least 2");
  if (!(mutation_prob >= 0.0 && mutation_prob <= 1.0)) throw std::invalid_argument("mutation_prob must lie in [0, 1]");
  if (hv_samples == 0) throw std::invalid_argument("hv_samples must be positive");
}

Points ExperimentResult::final_front() const {
  const Points unique = unique_rows(final_objectives);
  const auto fronts = nondominated_sort(unique, Orientation::Max);
  Points out(static_cast<Eigen::Index>(fronts.front().size()), unique.cols());
  for (std::size_t k = 0; k < fronts.front().size(); ++k)
    out.row(static_cast<Eigen::Index>(k)) = unique.row(static_cast<Eigen::Index>(fronts.front()[k]));
  return out;
}

double ga_hypervolume(const Points& objectives, std::size_t samples, std::uint64_t seed) {
  if (static_cast<std::size_t>(objectives.cols()) <= kHvExactMaxDims) return hypervolume(objectives);
  return hypervolume(objectives, HvMonteCarlo{samples, Rng::splitmix64(seed ^ 0x68767eULL)});
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

ExperimentResult evolve(const KnapsackInstance& instance, const GaConfig& config) {
  config.validate();
  const auto t_start = Clock::now();
  const std::size_t n = config.pop_size;
  const std::size_t bits = instance.n_items;
  const auto k = static_cast<Eigen::Index>(instance.n_knapsacks);

  ExperimentResult result;
  result.config = config;
  result.n_items = instance.n_items;
  result.n_knapsacks = instance.n_knapsacks;
  result.instance_seed = instance.seed;

  Rng rng(config.seed);
  std::vector<BitGenome> pop(n, BitGenome(bits));
  Points objs(static_cast<Eigen::Index>(n), k);
  for (std::size_t i = 0; i < n; ++i) {
    for (auto& b : pop[i]) b = rng.bernoulli(0.5) ? 1 : 0;
    pop[i] = repair(std::move(pop[i]), instance);
    objs.row(static_cast<Eigen::Index>(i)) = evaluate(pop[i], instance);
  }

  auto record = [&](std::size_t gen) {
    result.per_generation.push_back({gen, ga_hypervolume(objs, config.hv_samples, config.seed + gen)});
  };
  if (config.hv_every != 0) record(0);

  std::vector<BitGenome> pool(2 * n, BitGenome(bits));
  Points pool_objs(static_cast<Eigen::Index>(2 * n), k);
  for (std::size_t gen = 1; gen <= config.generations; ++gen) {
    for (std::size_t i = 0; i < n; ++i) {
      pool[i] = pop[i];
      pool_objs.row(static_cast<Eigen::Index>(i)) = objs.row(static_cast<Eigen::Index>(i));
    }
    for (std::size_t c = 0; c < n; c += 2) {
      const BitGenome& p1 = pop[rng.index(n)];
      const BitGenome& p2 = pop[rng.index(n)];
      BitGenome& a = pool[n + c];
      BitGenome& b = pool[n + c + 1];
      for (std::size_t j = 0; j < bits; ++j) {
        const bool swap = rng.bernoulli(0.5);
        a[j] = swap ? p2[j] : p1[j];
        b[j] = swap ? p1[j] : p2[j];
      }
      for (BitGenome* child : {&a, &b}) {
        for (auto& bit : *child)
          if (rng.bernoulli(config.mutation_prob)) bit ^= 1;
        *child = repair(std::move(*child), instance);
      }
      pool_objs.row(static_cast<Eigen::Index>(n + c)) = evaluate(a, instance);
      pool_objs.row(static_cast<Eigen::Index>(n + c + 1)) = evaluate(b, instance);
    }

    const auto t_sel = Clock::now();
    const IndexSet keep = environmental_selection(pool_objs, config.selector, n, Orientation::Max);
    result.wall_times.selection_seconds += seconds_since(t_sel);

    for (std::size_t i = 0; i < n; ++i) {
      pop[i] = pool[keep[i]];
      objs.row(static_cast<Eigen::Index>(i)) = pool_objs.row(static_cast<Eigen::Index>(keep[i]));
    }
    if (config.hv_every != 0 && (gen % config.hv_every == 0 || gen == config.generations)) record(gen);
  }

  result.final_population = std::move(pop);
  result.final_objectives = std::move(objs);
  if (!result.per_generation.empty() && result.per_generation.back().gen == config.generations)
    result.final_hypervolume = result.per_generation.back().hypervolume;
  else
    result.final_hypervolume =
        ga_hypervolume(result.final_objectives, config.hv_samples, config.seed + config.generations);
  result.wall_times.total_seconds = seconds_since(t_start);
  return result;
}

}  // namespace kpo
