#pragma once

// Constrained multi-objective problems for the jDE solver. An evaluation row
// is laid out as (g_1..g_ng, h_1..h_nh, f_1..f_M), matching cmop_relation
// and po_cmop.

#include "kpo/relations.hpp"
#include "kpo/types.hpp"

#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace kpo {

struct CmopProblem {
  std::string id;
  std::size_t n_objectives = 1;
  std::size_t ng = 0;
  std::size_t nh = 0;
  Vec lower;
  Vec upper;
  double epsilon = 1e-4;  // equality tolerance, h feasible on [-eps, eps]
  std::function<Vec(const VecRef&)> evaluate;
  /// Best known objective value for single-objective problems, NaN otherwise.
  double known_optimum = 0.0;

  std::size_t dim() const noexcept { return static_cast<std::size_t>(lower.size()); }
  std::size_t row_width() const noexcept { return ng + nh + n_objectives; }
  std::vector<std::pair<double, double>> eq_bounds() const;
  RelationSpec relation() const;

  /// Evaluates and checks the row width and finiteness. Throws DataError
  /// when the functions produce something unusable.
  Vec evaluate_checked(const VecRef& x) const;
  bool is_feasible(const VecRef& row) const;

  /// Throws std::invalid_argument unless L < U componentwise and eps > 0.
  void validate() const;
};

/// Built-in problems:
///  - sphere: sum x^2, D=5 on [-5, 5], unconstrained, optimum 0
///  - sphere_constrained: sphere with g = 1 - x_1 <= 0, optimum 1
///  - halfspace: sum (x_i - 1)^2 with g = x_1 - 0.5 <= 0, D=5, optimum 0.25
///  - sphere_eq: sphere with h = x_1 + x_2 - 1 = 0, optimum 0.5
///  - bnh: two objectives and two constraints on [0,5] x [0,3]
CmopProblem cmop_problem(std::string_view id);
std::vector<std::string> cmop_problem_ids();

}  // namespace kpo
