#pragma once

#include "kpo/ga.hpp"

#include <string>

namespace kpo {

/// JSON document for a GA run:
/// {config, seed, instance, per_generation:[{gen, hypervolume}],
///  final_hypervolume, final_front, wall_times}.
/// `final_front` is the path the caller wrote the front CSV to. Timing is
/// left out when `with_wall_times` is false, which makes the text a pure
/// function of the configuration.
std::string result_to_json(const ExperimentResult& result, const std::string& final_front_path,
                           bool with_wall_times = true);

}  // namespace kpo
