#include "kpo/posort.hpp"
#include "kpo/rng.hpp"

#include <algorithm>
#include <cmath>

namespace kpo {

double analytic_p_tk(double k) {
  if (!(k > 0.0 && k <= 1.0)) throw std::invalid_argument("analytic_p_tk: need 0 < k <= 1");
  return k - k * std::log(k);
}

double analytic_cho_tk(double k) {
  const double p = analytic_p_tk(k);
  return p * p - k * k * (0.5 - std::log(k));
}

PointSet mc_sample_square(std::size_t n, SquareDensity density, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("mc_sample_square: n must be >= 1");
  Rng rng(seed);
  Points p(static_cast<Eigen::Index>(n), 2);
  for (Eigen::Index i = 0; i < p.rows(); ++i) {
    const double u1 = rng.uniform();
    const double u2 = rng.uniform();
    switch (density) {
      case SquareDensity::Uniform:
        p(i, 0) = u1;
        p(i, 1) = u2;
        break;
      case SquareDensity::Rarefy2:  // marginal of x2 has CDF x2^2
        p(i, 0) = u1;
        p(i, 1) = std::sqrt(u2);
        break;
      case SquareDensity::Rarefy4:
        p(i, 0) = std::sqrt(u1);
        p(i, 1) = std::sqrt(u2);
        break;
    }
  }
  return PointSet(std::move(p));
}

double find_k_for_measure(const PoRanking& ranking, const DiscreteMeasure& measure, double target_fraction) {
  if (!(target_fraction > 0.0 && target_fraction <= 1.0))
    throw std::invalid_argument("find_k_for_measure: target fraction must be in (0, 1]");
  if (ranking.size() != measure.size()) throw DimensionError("find_k_for_measure: ranking and measure differ in size");
  // mu(T_k) only jumps at po values, so the answer is one of them: walk the
  // classes in ascending po until the accumulated mass reaches the target.
  const double needed = target_fraction * measure.total();
  double mass = 0.0;
  for (const auto& cls : ranking.classes) {
    for (std::size_t i : cls) mass += measure.weight(i);
    if (mass >= needed * (1.0 - 1e-12)) return ranking.po[cls.front()];
  }
  return ranking.po[ranking.classes.back().front()];
}

double find_k_for_measure(const PointSet& ps, double target_fraction) {
  const PoRanking ranking = ps.dim() == 2 ? po_exact_planar(ps)
                                          : po_exact(ps, RelationSpec::componentwise_min(ps.dim()));
  return find_k_for_measure(ranking, ps.measure, target_fraction) / ps.measure.total();
}

}  // namespace kpo
