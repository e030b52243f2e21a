#include "kpo/result_io.hpp"

#include <json.hpp>

namespace kpo {

std::string result_to_json(const ExperimentResult& result, const std::string& final_front_path, bool with_wall_times) {
  const GaConfig& c = result.config;
  nlohmann::ordered_json j;
  j["config"] = {{"pop_size", c.pop_size},
                 {"generations", c.generations},
                 {"mutation_prob", c.mutation_prob},
                 {"selector", std::string(to_string(c.selector))},
                 {"hv_every", c.hv_every},
                 {"hv_samples", c.hv_samples}};
  j["seed"] = c.seed;
  j["instance"] = {{"n_items", result.n_items}, {"n_knapsacks", result.n_knapsacks}, {"seed", result.instance_seed}};
  auto& gens = j["per_generation"] = nlohmann::ordered_json::array();
  for (const auto& g : result.per_generation) gens.push_back({{"gen", g.gen}, {"hypervolume", g.hypervolume}});
  j["final_hypervolume"] = result.final_hypervolume;
  j["final_front"] = final_front_path;
  if (with_wall_times)
    j["wall_times"] = {{"total_seconds", result.wall_times.total_seconds},
                       {"selection_seconds", result.wall_times.selection_seconds}};
  return j.dump(2) + "\n";
}

}  // namespace kpo
