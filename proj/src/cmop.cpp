#include "kpo/cmop.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace kpo {

std::vector<std::pair<double, double>> CmopProblem::eq_bounds() const {
  return std::vector<std::pair<double, double>>(nh, {-epsilon, epsilon});
}

RelationSpec CmopProblem::relation() const { return cmop_relation(ng, nh, eq_bounds(), n_objectives); }

Vec CmopProblem::evaluate_checked(const VecRef& x) const {
  if (!evaluate) throw DataError("cmop problem '" + id + "' has no evaluation function");
  Vec row = evaluate(x);
  if (static_cast<std::size_t>(row.size()) != row_width())
    throw DataError("cmop problem '" + id + "' returned a row of the wrong width");
  if (!row.allFinite()) throw DataError("cmop problem '" + id + "' returned a non-finite value");
  return row;
}

bool CmopProblem::is_feasible(const VecRef& row) const {
  for (std::size_t i = 0; i < ng; ++i)
    if (row[static_cast<Eigen::Index>(i)] > 0.0) return false;
  for (std::size_t j = 0; j < nh; ++j)
    if (std::abs(row[static_cast<Eigen::Index>(ng + j)]) > epsilon) return false;
  return true;
}

void CmopProblem::validate() const {
  if (lower.size() == 0 || lower.size() != upper.size()) throw std::invalid_argument("cmop: bounds missing or mismatched");
  if (!(lower.array() < upper.array()).all()) throw std::invalid_argument("cmop: need L_k < U_k");
  if (!(epsilon > 0.0)) throw std::invalid_argument("cmop: epsilon must be positive");
  if (n_objectives == 0) throw std::invalid_argument("cmop: need an objective");
}

namespace {

CmopProblem box(std::string id, std::size_t dims, double lo, double hi) {
  CmopProblem p;
  p.id = std::move(id);
  p.lower = Vec::Constant(static_cast<Eigen::Index>(dims), lo);
  p.upper = Vec::Constant(static_cast<Eigen::Index>(dims), hi);
  return p;
}

}  // namespace

CmopProblem cmop_problem(std::string_view id) {
  if (id == "sphere") {
    auto p = box("sphere", 5, -5.0, 5.0);
    p.evaluate = [](const VecRef& x) { return vec({x.squaredNorm()}); };
    return p;
  }
  if (id == "sphere_constrained") {
    auto p = box("sphere_constrained", 5, -5.0, 5.0);
    p.ng = 1;
    p.known_optimum = 1.0;
    p.evaluate = [](const VecRef& x) { return vec({1.0 - x[0], x.squaredNorm()}); };
    return p;
  }
  if (id == "halfspace") {
    auto p = box("halfspace", 5, -5.0, 5.0);
    p.ng = 1;
    p.known_optimum = 0.25;
    p.evaluate = [](const VecRef& x) { return vec({x[0] - 0.5, (x.array() - 1.0).square().sum()}); };
    return p;
  }
  if (id == "sphere_eq") {
    auto p = box("sphere_eq", 5, -5.0, 5.0);
    p.nh = 1;
    p.known_optimum = 0.5;
    p.evaluate = [](const VecRef& x) { return vec({x[0] + x[1] - 1.0, x.squaredNorm()}); };
    return p;
  }
  if (id == "bnh") {
    CmopProblem p;
    p.id = "bnh";
    p.n_objectives = 2;
    p.ng = 2;
    p.lower = vec({0.0, 0.0});
    p.upper = vec({5.0, 3.0});
    p.known_optimum = std::numeric_limits<double>::quiet_NaN();
    p.evaluate = [](const VecRef& x) {
      const double a = x[0], b = x[1];
      return vec({(a - 5) * (a - 5) + b * b - 25, 7.7 - (a - 8) * (a - 8) - (b + 3) * (b + 3),
                  4 * a * a + 4 * b * b, (a - 5) * (a - 5) + (b - 5) * (b - 5)});
    };
    return p;
  }
  throw std::invalid_argument("unknown cmop problem '" + std::string(id) + "'");
}

std::vector<std::string> cmop_problem_ids() { return {"sphere", "sphere_constrained", "halfspace", "sphere_eq", "bnh"}; }

}  // namespace kpo
