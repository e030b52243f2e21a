#pragma once

// Experiment metrics: hypervolume, dominated fraction, Kendall tau through
// choice, and the largest uncorrelated selection.

#include "kpo/relations.hpp"
#include "kpo/types.hpp"

#include <cstdint>
#include <variant>
#include <vector>

namespace kpo {

struct HvExact {};
struct HvMonteCarlo {
  std::size_t samples = 100000;
  std::uint64_t seed = 0;
};
using HvMode = std::variant<HvExact, HvMonteCarlo>;

inline constexpr std::size_t kHvExactMaxDims = 4;

struct HvEstimate {
  double value = 0.0;
  double std_error = 0.0;  // 0 for exact computation
};

/// Volume of the union of boxes [0, f] over the rows of `front`
/// (maximisation, origin reference). Exact mode by dimension sweep needs
/// M <= 4. Throws std::invalid_argument on negative coordinates.
HvEstimate hypervolume_estimate(const Points& front, const HvMode& mode);

template <class Derived>
double hypervolume(const Eigen::MatrixBase<Derived>& front, const HvMode& mode = HvExact{}) {
  return hypervolume_estimate(Points(front), mode).value;
}

/// theta in percent: for each dominating sample, the share of (deduplicated)
/// target points strictly dominated by at least one of its points, averaged
/// over the samples. `rel` defaults to componentwise maximisation.
double dominated_fraction(const Points& target, const std::vector<Points>& dominators);
double dominated_fraction(const Points& target, const std::vector<Points>& dominators, const RelationSpec& rel);

/// Exact-duplicate rows removed, first occurrence kept.
Points unique_rows(const Points& p);

struct KendallResult {
  double tau = 0.0;         // (n^2 + n - 2 cho) / (n^2 - n)
  double via_choice = 0.0;  // 1 - 2 div
  double choice = 0.0;
  double diversity = 0.0;
};

/// Kendall tau of an n x 2 sample through the counting-measure choice under
/// componentwise order. Throws DataError on duplicate rows or n < 2.
KendallResult kendall_tau(const Points& points);

/// Largest T_k, for po under "both coordinates higher is better", whose
/// counting-measure diversity is >= 1/2. Empty when none qualifies.
IndexSet largest_uncorrelated_pareto_set(const Points& points);

}  // namespace kpo
