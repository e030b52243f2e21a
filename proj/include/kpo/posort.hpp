#pragma once

// k-Pareto optimality: po(x) is the measure of everything strictly preferable
// to x. Sorting by po, the sets T_k = {po <= k}, choice and diversity of
// subsets, and the exhaustive max-choice oracle used to check T_k.

#include "kpo/measures.hpp"
#include "kpo/relations.hpp"
#include "kpo/types.hpp"

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace kpo {

/// Finite weighted item set: one row of `points` per item.
struct PointSet {
  Points points;
  DiscreteMeasure measure;

  PointSet() = default;
  PointSet(Points p, DiscreteMeasure m);
  /// Counting measure.
  explicit PointSet(Points p);

  std::size_t size() const noexcept { return static_cast<std::size_t>(points.rows()); }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(points.cols()); }
  auto row(std::size_t i) const { return points.row(static_cast<Eigen::Index>(i)); }
  double weight(std::size_t i) const { return measure.weight(i); }
};

/// po values with the induced stable ordering and equal-po classes.
struct PoRanking {
  std::vector<double> po;
  /// Indices by ascending po, ties by index.
  std::vector<std::size_t> order;
  /// Groups of equal po, ascending; each group lists indices ascending.
  std::vector<IndexSet> classes;

  static PoRanking from_values(std::vector<double> po);

  std::size_t size() const noexcept { return po.size(); }
  /// Class number of every item.
  std::vector<std::size_t> class_labels() const;
};

/// Exact po by a full pairwise pass, O(n^2) relation evaluations.
PoRanking po_exact(const PointSet& ps, const RelationSpec& rel);

/// Exact po for componentwise dominance on two axes, O(n log n) sweep with a
/// Fenwick tree. Same values as po_exact with componentwise(o1, o2).
PoRanking po_exact_planar(const PointSet& ps, std::span<const Orientation> orientations = {});

/// Probabilistic po for componentwise relations assuming independent axes:
/// prod_d F_d(x_d) - prod_d p_d(x_d) with weighted empirical marginals.
/// Values are probabilities in [0, 1]. Empty `orientations` means Min.
PoRanking po_prob(const PointSet& ps, std::span<const Orientation> orientations = {});

/// po for R_cf over evaluation rows (g_1..g_ng, h_1..h_nh, f_1..f_M), under
/// independence of objectives and constraints, with every distribution
/// estimated over the rows themselves.
PoRanking po_cmop(const Points& evals, std::size_t ng, std::size_t nh,
                  const std::vector<std::pair<double, double>>& eq_bounds);

/// Indices with po <= k, or po < k when `strict`. Ascending.
IndexSet t_k(const PoRanking& ranking, double k, bool strict = false);

/// Front number of every item under iterative peeling of non-dominated sets.
/// Throws std::invalid_argument if the strict relation has a cycle.
std::vector<std::size_t> pareto_fronts(const PointSet& ps, const RelationSpec& rel);

/// Product-measure mass of ordered pairs in subset^2 with xRy == yRx.
double choice(const PointSet& ps, std::span<const std::size_t> subset, const RelationSpec& rel);

/// Choice of a selection through mu(S)^2 - 2 sum_S w po. Throws
/// std::invalid_argument if `subset` is not a selection for `rel`.
double choice_of_selection(const PointSet& ps, std::span<const std::size_t> subset,
                           const PoRanking& ranking, const RelationSpec& rel);

/// choice / mu(subset)^2. Throws on an empty subset.
double diversity(const PointSet& ps, std::span<const std::size_t> subset, const RelationSpec& rel);

/// No item outside `subset` is strictly preferable to an item inside.
bool is_selection(const PointSet& ps, std::span<const std::size_t> subset, const RelationSpec& rel);

struct OracleResult {
  double best_choice = 0.0;
  std::vector<IndexSet> maximizers;
  std::uint64_t selections_visited = 0;
};

inline constexpr std::size_t kOracleMaxItems = 16;

/// Enumerates every selection with mu(S) <= m and returns the best choice and
/// all selections reaching it. Choice is accumulated pairwise, independent of
/// po. Throws std::invalid_argument for n > 16 or a cyclic strict relation.
OracleResult max_choice_oracle(const PointSet& ps, const RelationSpec& rel, double m);

/// Embeds a finite poset given by covering pairs (lower, upper), lower being
/// preferable, into points whose componentwise-min relation is that order.
/// Item i becomes the indicator vector of its down-set.
PointSet poset_point_set(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& covers,
                         std::vector<double> weights = {});

// Continuous case on the unit square with independent uniform marginals.

/// P(T_k) = k - k ln k for 0 < k <= 1.
double analytic_p_tk(double k);
/// cho(T_k) = (k - k ln k)^2 - k^2 (1/2 - ln k) for 0 < k <= 1.
double analytic_cho_tk(double k);
inline double analytic_diversity_tk(double k) {
  const double p = analytic_p_tk(k);
  return analytic_cho_tk(k) / (p * p);
}

enum class SquareDensity {
  Uniform,   // dx1 dx2
  Rarefy2,   // 2 x2 dx1 dx2
  Rarefy4,   // 4 x1 x2 dx1 dx2
};

/// n points on the unit square, counting measure, inverse-CDF sampling per axis.
PointSet mc_sample_square(std::size_t n, SquareDensity density, std::uint64_t seed);

/// Smallest k, in units of the normalised measure po / mu(X), for which
/// mu(T_k) / mu(X) >= target_fraction. po is taken under componentwise-min.
double find_k_for_measure(const PointSet& ps, double target_fraction);

/// Same on a precomputed ranking; k in raw po units.
double find_k_for_measure(const PoRanking& ranking, const DiscreteMeasure& measure, double target_fraction);

}  // namespace kpo
