#include "kpo/jde.hpp"

#include "kpo/posort.hpp"
#include "kpo/rng.hpp"
#include "kpo/selection.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kpo {

void JdeConfig::validate() const {
  if (pop_size < 4) throw std::invalid_argument("jde: pop_size must be at least 4");
  if (!(tau1 >= 0.0 && tau1 <= 1.0 && tau2 >= 0.0 && tau2 <= 1.0)) throw std::invalid_argument("jde: tau outside [0, 1]");
  if (!(f_lower > 0.0 && f_lower <= f_upper)) throw std::invalid_argument("jde: bad F bounds");
  if (!(cr_lower >= 0.0 && cr_lower <= cr_upper && cr_upper <= 1.0)) throw std::invalid_argument("jde: bad CR bounds");
}

double reflect_into(double v, double lo, double hi) {
  if (v >= lo && v <= hi) return v;
  const double w = hi - lo;
  double t = std::fmod(v - lo, 2.0 * w);
  if (t < 0.0) t += 2.0 * w;
  const double r = t <= w ? lo + t : hi - (t - w);
  return std::clamp(r, lo, hi);
}

JdeResult jde_solve(const CmopProblem& problem, const JdeConfig& config) {
  problem.validate();
  config.validate();
  const std::size_t ps = config.pop_size;
  const auto d = static_cast<Eigen::Index>(problem.dim());
  const auto width = static_cast<Eigen::Index>(problem.row_width());
  const auto bounds = problem.eq_bounds();
  Rng rng(config.seed);

  JdeResult out;
  Points pop(static_cast<Eigen::Index>(ps), d);
  // Rows 0..ps-1 hold the population, ps..2ps-1 the trials of the generation.
  Points evals(static_cast<Eigen::Index>(2 * ps), width);
  for (std::size_t i = 0; i < ps; ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    for (Eigen::Index k = 0; k < d; ++k) pop(r, k) = rng.uniform(problem.lower[k], problem.upper[k]);
    evals.row(r) = problem.evaluate_checked(pop.row(r));
  }
  out.evaluations_used = ps;

  std::vector<double> f(ps, config.f_init), cr(ps, config.cr_init);
  Points trials(static_cast<Eigen::Index>(ps), d);
  std::vector<double> trial_f(ps), trial_cr(ps);

  for (std::size_t gen = 0; gen < config.generations; ++gen) {
    for (std::size_t i = 0; i < ps; ++i) {
      trial_f[i] = rng.bernoulli(config.tau1) ? config.f_lower + rng.uniform() * (config.f_upper - config.f_lower) : f[i];
      trial_cr[i] = rng.bernoulli(config.tau2) ? config.cr_lower + rng.uniform() * (config.cr_upper - config.cr_lower) : cr[i];
      std::size_t r1, r2, r3;
      do r1 = rng.index(ps); while (r1 == i);
      do r2 = rng.index(ps); while (r2 == i || r2 == r1);
      do r3 = rng.index(ps); while (r3 == i || r3 == r1 || r3 == r2);
      const auto jrand = static_cast<Eigen::Index>(rng.index(problem.dim()));
      const auto ti = static_cast<Eigen::Index>(i);
      for (Eigen::Index k = 0; k < d; ++k) {
        double v = pop(ti, k);
        if (k == jrand || rng.uniform() < trial_cr[i]) {
          v = pop(static_cast<Eigen::Index>(r1), k) +
              trial_f[i] * (pop(static_cast<Eigen::Index>(r2), k) - pop(static_cast<Eigen::Index>(r3), k));
          v = reflect_into(v, problem.lower[k], problem.upper[k]);
        }
        trials(ti, k) = v;
      }
      evals.row(static_cast<Eigen::Index>(ps + i)) = problem.evaluate_checked(trials.row(ti));
    }
    out.evaluations_used += ps;

    const PoRanking ranking = po_cmop(evals, problem.ng, problem.nh, bounds);
    for (std::size_t i = 0; i < ps; ++i) {
      if (ranking.po[ps + i] <= ranking.po[i]) {
        const auto ti = static_cast<Eigen::Index>(i);
        pop.row(ti) = trials.row(ti);
        evals.row(ti) = evals.row(static_cast<Eigen::Index>(ps + i));
        f[i] = trial_f[i];
        cr[i] = trial_cr[i];
      }
    }
  }

  out.population = pop;
  out.evaluations = evals.topRows(static_cast<Eigen::Index>(ps));
  const PoRanking final_rank = po_cmop(out.evaluations, problem.ng, problem.nh, bounds);
  out.po = final_rank.po;
  out.best = final_rank.classes.front();

  IndexSet feasible;
  for (std::size_t i = 0; i < ps; ++i)
    if (problem.is_feasible(out.evaluations.row(static_cast<Eigen::Index>(i)))) feasible.push_back(i);
  if (!feasible.empty()) {
    const auto m = static_cast<Eigen::Index>(problem.n_objectives);
    Points objs(static_cast<Eigen::Index>(feasible.size()), m);
    for (std::size_t k = 0; k < feasible.size(); ++k)
      objs.row(static_cast<Eigen::Index>(k)) =
          out.evaluations.row(static_cast<Eigen::Index>(feasible[k])).tail(m);
    const auto fronts = nondominated_sort(objs, Orientation::Min);
    for (std::size_t k : fronts.front()) out.feasible_front.push_back(feasible[k]);
  }
  return out;
}

}  // namespace kpo
