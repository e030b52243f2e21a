#include "kpo/relations.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace kpo {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool same_pointee(const std::shared_ptr<const RelationSpec>& a,
                  const std::shared_ptr<const RelationSpec>& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

double interval_distance(double v, double lo, double hi) {
  if (v < lo) return lo - v;
  if (v > hi) return v - hi;
  return 0.0;
}

}  // namespace

namespace detail {

bool holds_unchecked(const RelationSpec& rel, const VecRef& x, const VecRef& y) {
  return std::visit(
      overloaded{
          [&](const Componentwise& c) {
            const auto first = static_cast<Eigen::Index>(c.offset);
            if (c.orientations.empty()) {
              for (Eigen::Index d = first; d < x.size(); ++d)
                if (x[d] > y[d]) return false;
              return true;
            }
            for (std::size_t k = 0; k < c.orientations.size(); ++k) {
              const auto d = first + static_cast<Eigen::Index>(k);
              if (c.orientations[k] == Orientation::Min ? x[d] > y[d] : x[d] < y[d]) return false;
            }
            return true;
          },
          [&](const Cone& c) { return x[1] <= y[1] && y[1] - x[1] >= c.a * (x[0] - y[0]); },
          [&](const IntervalQuery& q) {
            const auto d = static_cast<Eigen::Index>(q.axis);
            return interval_distance(x[d], q.lo, q.hi) <= interval_distance(y[d], q.lo, q.hi);
          },
          [&](const EqualityQuery& q) { return x[static_cast<Eigen::Index>(q.axis)] == q.value; },
          [&](const ToleranceBand& b) {
            const auto d = static_cast<Eigen::Index>(b.axis);
            const double hx = x[d];
            const double hy = y[d];
            return (b.lo <= hx && hx <= b.hi) || (hy <= hx && hx <= b.lo) ||
                   (b.hi <= hx && hx <= hy);
          },
          [&](const Conjunction& c) {
            return std::all_of(c.members.begin(), c.members.end(),
                               [&](const RelationSpec& m) { return holds_unchecked(m, x, y); });
          },
          [&](const Inverse& inv) { return holds_unchecked(*inv.inner, y, x); },
          [&](const LexicographicCmop& lex) {
            const bool xy = holds_unchecked(*lex.constraint_part, x, y);
            const bool yx = holds_unchecked(*lex.constraint_part, y, x);
            if (xy && !yx) return true;
            if (xy && yx) return holds_unchecked(*lex.objective_part, x, y);
            return false;
          },
      },
      rel.kind());
}

}  // namespace detail

using detail::holds_unchecked;

bool Conjunction::operator==(const Conjunction& other) const { return members == other.members; }

bool Inverse::operator==(const Inverse& other) const { return same_pointee(inner, other.inner); }

bool LexicographicCmop::operator==(const LexicographicCmop& other) const {
  return same_pointee(constraint_part, other.constraint_part) &&
         same_pointee(objective_part, other.objective_part);
}

RelationSpec RelationSpec::componentwise(std::vector<Orientation> orientations, std::size_t offset) {
  return RelationSpec(Componentwise{std::move(orientations), offset});
}

RelationSpec RelationSpec::cone(double a) {
  if (!(a > 0.0) || !std::isfinite(a)) throw std::invalid_argument("cone: parameter a must be > 0");
  return RelationSpec(Cone{a});
}

RelationSpec RelationSpec::interval(std::size_t axis, double lo, double hi) {
  if (!(lo <= hi)) throw std::invalid_argument("interval: lo must be <= hi");
  return RelationSpec(IntervalQuery{axis, lo, hi});
}

RelationSpec RelationSpec::equality(std::size_t axis, double value) {
  return RelationSpec(EqualityQuery{axis, value});
}

RelationSpec RelationSpec::tolerance_band(std::size_t axis, double lo, double hi) {
  if (!(lo <= hi)) throw std::invalid_argument("band: lo must be <= hi");
  return RelationSpec(ToleranceBand{axis, lo, hi});
}

RelationSpec RelationSpec::conjunction(std::vector<RelationSpec> members) {
  if (members.empty()) throw std::invalid_argument("conjunction: member list is empty");
  return RelationSpec(Conjunction{std::move(members)});
}

RelationSpec RelationSpec::inverse(RelationSpec inner) {
  return RelationSpec(Inverse{std::make_shared<const RelationSpec>(std::move(inner))});
}

RelationSpec RelationSpec::lexicographic(RelationSpec constraint_part, RelationSpec objective_part) {
  return RelationSpec(LexicographicCmop{std::make_shared<const RelationSpec>(std::move(constraint_part)),
                                        std::make_shared<const RelationSpec>(std::move(objective_part))});
}

std::size_t RelationSpec::min_dimension() const {
  return std::visit(
      overloaded{
          [](const Componentwise& c) {
            return c.orientations.empty() ? c.offset + 1 : c.offset + c.orientations.size();
          },
          [](const Cone&) -> std::size_t { return 2; },
          [](const IntervalQuery& q) { return q.axis + 1; },
          [](const EqualityQuery& q) { return q.axis + 1; },
          [](const ToleranceBand& b) { return b.axis + 1; },
          [](const Conjunction& c) {
            std::size_t d = 0;
            for (const auto& m : c.members) d = std::max(d, m.min_dimension());
            return d;
          },
          [](const Inverse& inv) { return inv.inner->min_dimension(); },
          [](const LexicographicCmop& lex) {
            return std::max(lex.constraint_part->min_dimension(), lex.objective_part->min_dimension());
          },
      },
      kind_);
}

std::size_t RelationSpec::exact_dimension() const {
  return std::visit(
      overloaded{
          [](const Componentwise& c) -> std::size_t {
            return c.orientations.empty() ? 0 : c.offset + c.orientations.size();
          },
          [](const Conjunction& c) {
            std::size_t d = 0;
            for (const auto& m : c.members) d = std::max(d, m.exact_dimension());
            return d;
          },
          [](const Inverse& inv) { return inv.inner->exact_dimension(); },
          [](const LexicographicCmop& lex) {
            return std::max(lex.constraint_part->exact_dimension(),
                            lex.objective_part->exact_dimension());
          },
          [](const auto&) -> std::size_t { return 0; },
      },
      kind_);
}

void check_dimension(const RelationSpec& rel, std::size_t dim) {
  const std::size_t exact = rel.exact_dimension();
  if (exact != 0 && dim != exact) {
    std::ostringstream os;
    os << "relation expects vectors of length " << exact << ", got " << dim;
    throw DimensionError(os.str());
  }
  if (dim < rel.min_dimension()) {
    std::ostringstream os;
    os << "relation needs at least " << rel.min_dimension() << " coordinates, got " << dim;
    throw DimensionError(os.str());
  }
}

bool holds(const RelationSpec& rel, const VecRef& x, const VecRef& y) {
  if (x.size() != y.size()) throw DimensionError("holds: vectors differ in length");
  check_dimension(rel, static_cast<std::size_t>(x.size()));
  return holds_unchecked(rel, x, y);
}

ComparisonOutcome compare(const RelationSpec& rel, const VecRef& x, const VecRef& y) {
  if (x.size() != y.size()) throw DimensionError("compare: vectors differ in length");
  check_dimension(rel, static_cast<std::size_t>(x.size()));
  const bool xy = holds_unchecked(rel, x, y);
  const bool yx = holds_unchecked(rel, y, x);
  if (xy && yx) return ComparisonOutcome::Equivalent;
  if (xy) return ComparisonOutcome::StrictlyBetter;
  if (yx) return ComparisonOutcome::StrictlyWorse;
  return ComparisonOutcome::Incomparable;
}

std::string_view to_string(ComparisonOutcome outcome) {
  switch (outcome) {
    case ComparisonOutcome::StrictlyBetter: return "strictly_better";
    case ComparisonOutcome::StrictlyWorse: return "strictly_worse";
    case ComparisonOutcome::Equivalent: return "equivalent";
    case ComparisonOutcome::Incomparable: return "incomparable";
  }
  return "?";
}

RelationSpec cmop_relation(std::size_t ng, std::size_t nh,
                           const std::vector<std::pair<double, double>>& eq_bounds, std::size_t m) {
  if (eq_bounds.size() != nh) throw std::invalid_argument("cmop_relation: need one [a, b] per equality constraint");
  std::vector<RelationSpec> constraints;
  constraints.reserve(ng + nh);
  for (std::size_t i = 0; i < ng; ++i)
    constraints.push_back(RelationSpec::interval(i, -std::numeric_limits<double>::infinity(), 0.0));
  for (std::size_t j = 0; j < nh; ++j)
    constraints.push_back(RelationSpec::tolerance_band(ng + j, eq_bounds[j].first, eq_bounds[j].second));

  auto objectives = m == 0 ? RelationSpec::componentwise({}, ng + nh)
                           : RelationSpec::componentwise(std::vector<Orientation>(m, Orientation::Min), ng + nh);
  // Without constraints every pair is constraint-equivalent, so R_cf is R_f.
  if (constraints.empty()) return objectives;
  return RelationSpec::lexicographic(RelationSpec::conjunction(std::move(constraints)), std::move(objectives));
}

}  // namespace kpo
