#pragma once

// Self-adaptive differential evolution (rand/1/bin) with po_cmop as fitness.

#include "kpo/cmop.hpp"
#include "kpo/types.hpp"

#include <cstdint>
#include <vector>

namespace kpo {

struct JdeConfig {
  std::size_t pop_size = 50;
  std::size_t generations = 300;
  double tau1 = 0.1;  // chance of regenerating F
  double tau2 = 0.1;  // chance of regenerating CR
  double f_lower = 0.1;
  double f_upper = 1.0;
  double cr_lower = 0.0;
  double cr_upper = 1.0;
  double f_init = 0.5;
  double cr_init = 0.9;
  std::uint64_t seed = 0;

  void validate() const;
};

struct JdeResult {
  Points population;   // ps x D
  Points evaluations;  // ps x (ng + nh + M)
  std::vector<double> po;  // po_cmop of the final population among itself
  IndexSet best;           // indices with the smallest po
  IndexSet feasible_front; // feasible and non-dominated among feasible rows
  std::size_t evaluations_used = 0;
};

JdeResult jde_solve(const CmopProblem& problem, const JdeConfig& config);

/// Folds v back into [lo, hi] by mirror reflection at the bounds.
double reflect_into(double v, double lo, double hi);

}  // namespace kpo
