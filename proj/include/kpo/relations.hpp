#pragma once

// Preference relations over coordinate vectors. `holds(rel, x, y)` reads as
// "x is at least as preferable as y"; the strict part, equivalence and
// incomparability are derived from two calls.

#include "kpo/types.hpp"

#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace kpo {

class RelationSpec;

/// x R y iff x_d <= y_d (Min) or x_d >= y_d (Max) on axes offset..offset+k-1.
/// An empty orientation list means Min on every axis from `offset` to the
/// end of the vector.
struct Componentwise {
  std::vector<Orientation> orientations;
  std::size_t offset = 0;
  bool operator==(const Componentwise&) const = default;
};

/// Two-dimensional cone: x R y iff x_2 <= y_2 and y_2 - x_2 >= a (x_1 - y_1).
struct Cone {
  double a = 1.0;
  bool operator==(const Cone&) const = default;
};

/// x R y iff dist(x_axis, [lo, hi]) <= dist(y_axis, [lo, hi]).
struct IntervalQuery {
  std::size_t axis = 0;
  double lo = 0.0;
  double hi = 0.0;
  bool operator==(const IntervalQuery&) const = default;
};

/// x R y iff x_axis == value. Not reflexive.
struct EqualityQuery {
  std::size_t axis = 0;
  double value = 0.0;
  bool operator==(const EqualityQuery&) const = default;
};

/// Equality-constraint relation h in [lo, hi]:
/// x R y iff h(x) in [lo, hi], or h(y) <= h(x) <= lo, or hi <= h(x) <= h(y).
struct ToleranceBand {
  std::size_t axis = 0;
  double lo = 0.0;
  double hi = 0.0;
  bool operator==(const ToleranceBand&) const = default;
};

struct Conjunction {
  std::vector<RelationSpec> members;
  bool operator==(const Conjunction&) const;
};

struct Inverse {
  std::shared_ptr<const RelationSpec> inner;
  bool operator==(const Inverse&) const;
};

/// x R y iff x R*_c y, or (x R=_c y and x R_f y).
struct LexicographicCmop {
  std::shared_ptr<const RelationSpec> constraint_part;
  std::shared_ptr<const RelationSpec> objective_part;
  bool operator==(const LexicographicCmop&) const;
};

/// Immutable declarative relation. Construct through the named factories,
/// which validate the kind's invariants.
class RelationSpec {
public:
  using Kind = std::variant<Componentwise, Cone, IntervalQuery, EqualityQuery, ToleranceBand,
                            Conjunction, Inverse, LexicographicCmop>;

  static RelationSpec componentwise(std::vector<Orientation> orientations, std::size_t offset = 0);
  static RelationSpec componentwise_min(std::size_t dims) {
    return componentwise(std::vector<Orientation>(dims, Orientation::Min));
  }
  static RelationSpec componentwise_max(std::size_t dims) {
    return componentwise(std::vector<Orientation>(dims, Orientation::Max));
  }
  static RelationSpec cone(double a);
  static RelationSpec interval(std::size_t axis, double lo, double hi);
  static RelationSpec equality(std::size_t axis, double value);
  static RelationSpec tolerance_band(std::size_t axis, double lo, double hi);
  static RelationSpec conjunction(std::vector<RelationSpec> members);
  static RelationSpec inverse(RelationSpec inner);
  static RelationSpec lexicographic(RelationSpec constraint_part, RelationSpec objective_part);

  const Kind& kind() const noexcept { return kind_; }

  /// Smallest vector length the relation can be evaluated on.
  std::size_t min_dimension() const;

  /// Exact vector length if the relation pins one (explicit componentwise
  /// orientations), otherwise 0.
  std::size_t exact_dimension() const;

  bool operator==(const RelationSpec& other) const { return kind_ == other.kind_; }

private:
  explicit RelationSpec(Kind kind) : kind_(std::move(kind)) {}
  Kind kind_;
};

enum class ComparisonOutcome { StrictlyBetter, StrictlyWorse, Equivalent, Incomparable };

std::string_view to_string(ComparisonOutcome outcome);

/// Truth of x R y. Throws DimensionError if x and y disagree in length or do
/// not fit the relation.
bool holds(const RelationSpec& rel, const VecRef& x, const VecRef& y);

ComparisonOutcome compare(const RelationSpec& rel, const VecRef& x, const VecRef& y);

/// x R* y: x R y and not y R x.
inline bool strictly_prefers(const RelationSpec& rel, const VecRef& x, const VecRef& y) {
  return compare(rel, x, y) == ComparisonOutcome::StrictlyBetter;
}

/// xRy == yRx, i.e. the pair offers choice.
inline bool offers_choice(const RelationSpec& rel, const VecRef& x, const VecRef& y) {
  const auto c = compare(rel, x, y);
  return c == ComparisonOutcome::Equivalent || c == ComparisonOutcome::Incomparable;
}

namespace detail {
/// holds() without the dimension check; callers validate once up front.
bool holds_unchecked(const RelationSpec& rel, const VecRef& x, const VecRef& y);
}  // namespace detail

/// Throws DimensionError unless vectors of length `dim` fit the relation.
void check_dimension(const RelationSpec& rel, std::size_t dim);

/// Constrained multi-objective relation R_cf over evaluation vectors laid out
/// as (g_1..g_ng, h_1..h_nh, f_1..f_m). With m == 0 the objective block is
/// every remaining axis.
RelationSpec cmop_relation(std::size_t ng, std::size_t nh,
                           const std::vector<std::pair<double, double>>& eq_bounds,
                           std::size_t m = 0);

/// Text form, e.g. `componentwise(min,max)`, `cone(a=0.5)`,
/// `cmop(ng=2,nh=1,hbounds=[[-1e-4,1e-4]])`, `and(interval(axis=0,lo=1,hi=2),
/// equals(axis=1,value=3))`, `inverse(...)`, `lex(constraint, objective)`.
RelationSpec parse_relation(std::string_view text);
std::string to_string(const RelationSpec& rel);

}  // namespace kpo
