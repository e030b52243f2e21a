#pragma once

#include "kpo/types.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace kpo {

enum class Selector { Nsga2, PoCount, PoProb };

std::string_view to_string(Selector s);
std::optional<Selector> parse_selector(std::string_view text);

/// Fronts of componentwise dominance among the rows, best first, via the
/// counter-based fast non-dominated sort.
std::vector<IndexSet> nondominated_sort(const Points& objectives, Orientation orientation);

/// Crowding distance of `members` (rows of `objectives`), aligned with
/// `members`. Boundary members get +inf.
std::vector<double> crowding_distance(const Points& objectives, std::span<const std::size_t> members);

/// Keeps `survivors` rows out of the combined pool and returns their indices
/// in ascending order.
///  - Nsga2: fronts, crowding distance truncates the split front.
///  - PoCount: exact po under the counting measure, smallest first.
///  - PoProb: probabilistic po from per-objective ECDFs, smallest first.
/// The po selectors break ties at the cut by crowding distance, then index.
IndexSet environmental_selection(const Points& objectives, Selector selector, std::size_t survivors,
                                 Orientation orientation = Orientation::Max);

}  // namespace kpo
