#include "kpo/metrics.hpp"

#include "kpo/posort.hpp"
#include "kpo/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace kpo {

namespace {

using Row = std::vector<double>;

double hv_recursive(std::vector<Row> pts, std::size_t dims) {
  if (pts.empty()) return 0.0;
  if (dims == 1) {
    double best = 0.0;
    for (const auto& p : pts) best = std::max(best, p[0]);
    return best;
  }
  if (dims == 2) {
    std::sort(pts.begin(), pts.end(), [](const Row& a, const Row& b) { return a[0] > b[0]; });
    double area = 0.0;
    double top = 0.0;
    for (const auto& p : pts) {
      if (p[1] > top) {
        area += p[0] * (p[1] - top);
        top = p[1];
      }
    }
    return area;
  }
  const std::size_t last = dims - 1;
  std::sort(pts.begin(), pts.end(), [last](const Row& a, const Row& b) { return a[last] > b[last]; });
  double volume = 0.0;
  std::vector<Row> slice;
  slice.reserve(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    slice.push_back(pts[i]);
    const double next = i + 1 < pts.size() ? pts[i + 1][last] : 0.0;
    const double height = pts[i][last] - next;
    if (height > 0.0) volume += height * hv_recursive(slice, last);
  }
  return volume;
}

bool weakly_covers(const Points& front, Eigen::Index r, const Eigen::RowVectorXd& x) {
  for (Eigen::Index d = 0; d < x.size(); ++d)
    if (front(r, d) < x[d]) return false;
  return true;
}

}  // namespace

HvEstimate hypervolume_estimate(const Points& front, const HvMode& mode) {
  if (front.rows() == 0) return {};
  if ((front.array() < 0.0).any())
    throw std::invalid_argument("hypervolume: negative coordinate with origin reference");
  const auto dims = static_cast<std::size_t>(front.cols());

  if (std::holds_alternative<HvExact>(mode)) {
    if (dims > kHvExactMaxDims) throw std::invalid_argument("hypervolume: exact mode supports at most 4 objectives");
    std::vector<Row> pts;
    for (Eigen::Index r = 0; r < front.rows(); ++r)
      pts.emplace_back(front.row(r).data(), front.row(r).data() + front.cols());
    return {hv_recursive(std::move(pts), dims), 0.0};
  }

  const auto& mc = std::get<HvMonteCarlo>(mode);
  if (mc.samples == 0) throw std::invalid_argument("hypervolume: Monte Carlo needs samples");
  const Eigen::RowVectorXd box = front.colwise().maxCoeff();
  const double box_volume = box.prod();
  if (box_volume == 0.0) return {};
  Rng rng(mc.seed);
  Eigen::RowVectorXd x(front.cols());
  std::size_t hits = 0;
  for (std::size_t s = 0; s < mc.samples; ++s) {
    for (Eigen::Index d = 0; d < x.size(); ++d) x[d] = rng.uniform() * box[d];
    for (Eigen::Index r = 0; r < front.rows(); ++r) {
      if (weakly_covers(front, r, x)) {
        ++hits;
        break;
      }
    }
  }
  const double p = static_cast<double>(hits) / static_cast<double>(mc.samples);
  return {box_volume * p, box_volume * std::sqrt(p * (1.0 - p) / static_cast<double>(mc.samples))};
}

Points unique_rows(const Points& p) {
  std::set<std::vector<double>> seen;
  std::vector<Eigen::Index> keep;
  for (Eigen::Index r = 0; r < p.rows(); ++r) {
    std::vector<double> key(p.row(r).data(), p.row(r).data() + p.cols());
    if (seen.insert(std::move(key)).second) keep.push_back(r);
  }
  Points out(static_cast<Eigen::Index>(keep.size()), p.cols());
  for (std::size_t k = 0; k < keep.size(); ++k) out.row(static_cast<Eigen::Index>(k)) = p.row(keep[k]);
  return out;
}

double dominated_fraction(const Points& target, const std::vector<Points>& dominators) {
  return dominated_fraction(target, dominators,
                            RelationSpec::componentwise_max(static_cast<std::size_t>(target.cols())));
}

double dominated_fraction(const Points& target, const std::vector<Points>& dominators, const RelationSpec& rel) {
  if (dominators.empty()) throw std::invalid_argument("dominated_fraction: no dominating sample");
  const Points tgt = unique_rows(target);
  if (tgt.rows() == 0) throw std::invalid_argument("dominated_fraction: empty target");
  check_dimension(rel, static_cast<std::size_t>(tgt.cols()));
  double sum = 0.0;
  for (const Points& raw : dominators) {
    if (raw.cols() != tgt.cols()) throw DimensionError("dominated_fraction: objective counts differ");
    const Points dom = unique_rows(raw);
    std::size_t dominated = 0;
    for (Eigen::Index t = 0; t < tgt.rows(); ++t) {
      for (Eigen::Index d = 0; d < dom.rows(); ++d) {
        if (detail::holds_unchecked(rel, dom.row(d), tgt.row(t)) &&
            !detail::holds_unchecked(rel, tgt.row(t), dom.row(d))) {
          ++dominated;
          break;
        }
      }
    }
    sum += static_cast<double>(dominated) / static_cast<double>(tgt.rows());
  }
  return 100.0 * sum / static_cast<double>(dominators.size());
}

KendallResult kendall_tau(const Points& points) {
  if (points.cols() != 2) throw DimensionError("kendall_tau: two columns expected");
  const auto n = static_cast<std::size_t>(points.rows());
  if (n < 2) throw DataError("kendall_tau: need at least two points");
  if (static_cast<std::size_t>(unique_rows(points).rows()) != n) throw DataError("kendall_tau: duplicate rows");

  const PointSet ps(points);
  IndexSet all(n);
  std::iota(all.begin(), all.end(), std::size_t{0});
  KendallResult r;
  r.choice = choice(ps, all, RelationSpec::componentwise_min(2));
  const double nn = static_cast<double>(n);
  r.diversity = r.choice / (nn * nn);
  r.tau = (nn * nn + nn - 2.0 * r.choice) / (nn * nn - nn);
  r.via_choice = 1.0 - 2.0 * r.diversity;
  return r;
}

IndexSet largest_uncorrelated_pareto_set(const Points& points) {
  if (points.cols() != 2) throw DimensionError("largest_uncorrelated_pareto_set: two columns expected");
  if (points.rows() < 2) throw DataError("largest_uncorrelated_pareto_set: need at least two points");
  const PointSet ps(points);
  const auto rel = RelationSpec::componentwise_max(2);
  const PoRanking ranking = po_exact(ps, rel);

  // Grow T_k class by class, updating the counting choice incrementally.
  IndexSet members;
  IndexSet best;
  double cho = 0.0;
  for (const auto& cls : ranking.classes) {
    for (std::size_t i : cls) {
      cho += 1.0;
      for (std::size_t j : members)
        if (detail::holds_unchecked(rel, ps.row(i), ps.row(j)) == detail::holds_unchecked(rel, ps.row(j), ps.row(i)))
          cho += 2.0;
      members.push_back(i);
    }
    const double size = static_cast<double>(members.size());
    if (cho / (size * size) >= 0.5) best = members;
  }
  std::sort(best.begin(), best.end());
  return best;
}

}  // namespace kpo
