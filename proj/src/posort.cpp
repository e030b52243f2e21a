#include "kpo/posort.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <numeric>
#include <sstream>

namespace kpo {

namespace {

using detail::holds_unchecked;

// Order-preserving map from doubles to unsigned keys; -0 and +0 share a key.
std::uint64_t sort_key(double v) {
  const auto bits = std::bit_cast<std::uint64_t>(v == 0.0 ? 0.0 : v);
  return (bits >> 63) != 0 ? ~bits : bits | (std::uint64_t{1} << 63);
}

// Stable LSD radix sort of (key, index) pairs, one byte per pass. Passes where
// every key has the same byte are skipped.
void radix_sort(std::vector<std::pair<std::uint64_t, std::size_t>>& items,
                std::vector<std::pair<std::uint64_t, std::size_t>>& scratch) {
  scratch.resize(items.size());
  for (int shift = 0; shift < 64; shift += 8) {
    std::array<std::size_t, 257> count{};
    for (const auto& it : items) ++count[((it.first >> shift) & 0xff) + 1];
    if (std::find(count.begin() + 1, count.end(), items.size()) != count.end()) continue;
    for (std::size_t b = 1; b < count.size(); ++b) count[b] += count[b - 1];
    for (const auto& it : items) scratch[count[(it.first >> shift) & 0xff]++] = it;
    items.swap(scratch);
  }
}

// Fast path for componentwise relations starting at axis 0: the verdict for a
// pair comes from one scan over the coordinates.
const Componentwise* plain_componentwise(const RelationSpec& rel, std::size_t dim) {
  const auto* c = std::get_if<Componentwise>(&rel.kind());
  if (c == nullptr || c->offset != 0) return nullptr;
  if (!c->orientations.empty() && c->orientations.size() != dim) return nullptr;
  return c;
}

// +1: i R* j, -1: j R* i, 0: otherwise.
int componentwise_verdict(const Componentwise& c, const Points& p, Eigen::Index i, Eigen::Index j) {
  bool i_worse = false;
  bool j_worse = false;
  const Eigen::Index dims = p.cols();
  for (Eigen::Index d = 0; d < dims; ++d) {
    const bool max = !c.orientations.empty() && c.orientations[static_cast<std::size_t>(d)] == Orientation::Max;
    const double a = p(i, d);
    const double b = p(j, d);
    if (a == b) continue;
    if ((a > b) != max) {
      i_worse = true;
    } else {
      j_worse = true;
    }
    if (i_worse && j_worse) return 0;
  }
  if (!i_worse && j_worse) return 1;
  if (i_worse && !j_worse) return -1;
  return 0;
}

// Strict-dominance verdict for every unordered pair; visits pairs i < j.
template <class Visit>
void for_each_pair_verdict(const PointSet& ps, const RelationSpec& rel, Visit&& visit) {
  const std::size_t n = ps.size();
  if (const auto* c = plain_componentwise(rel, ps.dim())) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        visit(i, j, componentwise_verdict(*c, ps.points, static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
    return;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool ij = holds_unchecked(rel, ps.row(i), ps.row(j));
      const bool ji = holds_unchecked(rel, ps.row(j), ps.row(i));
      visit(i, j, ij == ji ? 0 : (ij ? 1 : -1));
    }
  }
}

void check_indices(const PointSet& ps, std::span<const std::size_t> subset) {
  for (std::size_t i : subset)
    if (i >= ps.size()) throw std::out_of_range("index " + std::to_string(i) + " outside point set");
}

class Fenwick {
public:
  explicit Fenwick(std::size_t n) : tree_(n + 1, 0.0) {}
  void add(std::size_t i, double w) {
    for (++i; i < tree_.size(); i += i & (~i + 1)) tree_[i] += w;
  }
  double prefix(std::size_t i) const {  // sum over [0, i]
    double s = 0.0;
    for (++i; i > 0; i -= i & (~i + 1)) s += tree_[i];
    return s;
  }

private:
  std::vector<double> tree_;
};

}  // namespace

PointSet::PointSet(Points p, DiscreteMeasure m) : points(std::move(p)), measure(std::move(m)) {
  if (points.rows() < 1) throw std::invalid_argument("PointSet: needs at least one item");
  if (measure.size() != static_cast<std::size_t>(points.rows()))
    throw DimensionError("PointSet: one weight per item required");
}

PointSet::PointSet(Points p) : PointSet(p, DiscreteMeasure::counting(static_cast<std::size_t>(p.rows()))) {}

PoRanking PoRanking::from_values(std::vector<double> po) {
  PoRanking r;
  r.po = std::move(po);
  r.order.resize(r.po.size());
  std::iota(r.order.begin(), r.order.end(), std::size_t{0});
  std::stable_sort(r.order.begin(), r.order.end(),
                   [&](std::size_t a, std::size_t b) { return r.po[a] < r.po[b]; });
  for (std::size_t k = 0; k < r.order.size(); ++k) {
    const std::size_t i = r.order[k];
    if (k == 0 || r.po[i] != r.po[r.order[k - 1]]) r.classes.emplace_back();
    r.classes.back().push_back(i);
  }
  return r;
}

std::vector<std::size_t> PoRanking::class_labels() const {
  std::vector<std::size_t> labels(po.size());
  for (std::size_t c = 0; c < classes.size(); ++c)
    for (std::size_t i : classes[c]) labels[i] = c;
  return labels;
}

PoRanking po_exact(const PointSet& ps, const RelationSpec& rel) {
  check_dimension(rel, ps.dim());
  std::vector<double> po(ps.size(), 0.0);
  for_each_pair_verdict(ps, rel, [&](std::size_t i, std::size_t j, int v) {
    if (v > 0) po[j] += ps.weight(i);
    if (v < 0) po[i] += ps.weight(j);
  });
  return PoRanking::from_values(std::move(po));
}

PoRanking po_exact_planar(const PointSet& ps, std::span<const Orientation> orientations) {
  if (ps.dim() != 2) throw DimensionError("po_exact_planar: needs two coordinates");
  if (!orientations.empty() && orientations.size() != 2)
    throw DimensionError("po_exact_planar: two orientations expected");
  const std::size_t n = ps.size();
  auto coord = [&](std::size_t i, int d) {
    const double v = ps.points(static_cast<Eigen::Index>(i), d);
    return !orientations.empty() && orientations[static_cast<std::size_t>(d)] == Orientation::Max ? -v : v;
  };

  std::vector<double> second(n);
  for (std::size_t i = 0; i < n; ++i) second[i] = coord(i, 1);
  std::vector<double> ranks = second;
  std::sort(ranks.begin(), ranks.end());
  ranks.erase(std::unique(ranks.begin(), ranks.end()), ranks.end());
  auto rank_of = [&](double v) {
    return static_cast<std::size_t>(std::lower_bound(ranks.begin(), ranks.end(), v) - ranks.begin());
  };

  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    const double a0 = coord(a, 0), b0 = coord(b, 0);
    if (a0 != b0) return a0 < b0;
    return second[a] < second[b];
  });

  std::vector<double> po(n, 0.0);
  Fenwick tree(ranks.size());
  std::size_t start = 0;
  while (start < n) {
    std::size_t end = start;
    const double first = coord(idx[start], 0);
    while (end < n && coord(idx[end], 0) == first) ++end;
    for (std::size_t k = start; k < end; ++k) tree.add(rank_of(second[idx[k]]), ps.weight(idx[k]));
    // Within the group, equal second coordinates are exact duplicates.
    std::size_t run = start;
    while (run < end) {
      std::size_t run_end = run;
      double dup = 0.0;
      while (run_end < end && second[idx[run_end]] == second[idx[run]]) dup += ps.weight(idx[run_end++]);
      const double covered = tree.prefix(rank_of(second[idx[run]]));
      for (std::size_t k = run; k < run_end; ++k) po[idx[k]] = covered - dup;
      run = run_end;
    }
    start = end;
  }
  return PoRanking::from_values(std::move(po));
}

PoRanking po_prob(const PointSet& ps, std::span<const Orientation> orientations) {
  const std::size_t n = ps.size();
  const std::size_t dims = ps.dim();
  if (dims < 1) throw DimensionError("po_prob: needs at least one coordinate");
  if (!orientations.empty() && orientations.size() != dims)
    throw DimensionError("po_prob: one orientation per coordinate");

  std::span<const double> weights;
  if (!ps.measure.is_uniform()) weights = ps.measure.weights();

  // The ECDFs are only queried at the sample itself, so one sort per column
  // gives every F(x) and point mass without searching. Arithmetic matches Ecdf.
  const bool counting = weights.empty();
  const double total = counting ? static_cast<double>(n) : std::accumulate(weights.begin(), weights.end(), 0.0);
  std::vector<double> le(n, 1.0);
  std::vector<double> eq(n, 1.0);
  std::vector<std::pair<std::uint64_t, std::size_t>> column(n), scratch;
  for (std::size_t d = 0; d < dims; ++d) {
    const bool max = !orientations.empty() && orientations[d] == Orientation::Max;
    for (std::size_t i = 0; i < n; ++i) {
      const double v = ps.points(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(d));
      column[i] = {sort_key(max ? -v : v), i};
    }
    radix_sort(column, scratch);
    double running = 0.0, previous = 0.0;
    for (std::size_t start = 0; start < n;) {
      std::size_t end = start;
      while (end < n && column[end].first == column[start].first) {
        running += counting ? 1.0 : weights[column[end].second];
        ++end;
      }
      const double cumulative = end == n ? 1.0 : (counting ? static_cast<double>(end) / total : running / total);
      const double mass = start == 0 ? cumulative : cumulative - previous;
      for (std::size_t k = start; k < end; ++k) {
        le[column[k].second] *= cumulative;
        eq[column[k].second] *= mass;
      }
      previous = cumulative;
      start = end;
    }
  }
  std::vector<double> po(n);
  for (std::size_t i = 0; i < n; ++i) po[i] = std::max(0.0, le[i] - eq[i]);
  return PoRanking::from_values(std::move(po));
}

PoRanking po_cmop(const Points& evals, std::size_t ng, std::size_t nh,
                  const std::vector<std::pair<double, double>>& eq_bounds) {
  const auto n = static_cast<std::size_t>(evals.rows());
  const auto cols = static_cast<std::size_t>(evals.cols());
  if (n == 0) throw std::invalid_argument("po_cmop: empty population");
  if (eq_bounds.size() != nh) throw DimensionError("po_cmop: one [a, b] per equality constraint");
  if (cols <= ng + nh) throw DimensionError("po_cmop: evaluation rows have no objective block");
  const std::size_t m = cols - ng - nh;

  auto column = [&](std::size_t c) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = evals(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c));
    return v;
  };

  std::vector<Ecdf> g_cdf;
  std::vector<HStar> h_star;
  std::vector<Ecdf> f_cdf;
  for (std::size_t i = 0; i < ng; ++i) g_cdf.push_back(Ecdf::build(column(i)));
  for (std::size_t j = 0; j < nh; ++j)
    h_star.push_back(HStar::build(column(ng + j), eq_bounds[j].first, eq_bounds[j].second));
  for (std::size_t k = 0; k < m; ++k) f_cdf.push_back(Ecdf::build(column(ng + nh + k)));

  double p_feasible = 1.0;
  for (const auto& g : g_cdf) p_feasible *= g(0.0);
  for (const auto& h : h_star) p_feasible *= h(h.lower());

  std::vector<double> po(n);
  for (std::size_t r = 0; r < n; ++r) {
    const auto row = evals.row(static_cast<Eigen::Index>(r));
    bool feasible = true;
    for (std::size_t i = 0; i < ng; ++i) feasible = feasible && row[static_cast<Eigen::Index>(i)] <= 0.0;
    for (std::size_t j = 0; j < nh; ++j) {
      const double h = row[static_cast<Eigen::Index>(ng + j)];
      feasible = feasible && eq_bounds[j].first <= h && h <= eq_bounds[j].second;
    }
    double value = 1.0;
    if (feasible) {
      value = p_feasible;
      for (std::size_t k = 0; k < m; ++k) value *= f_cdf[k](row[static_cast<Eigen::Index>(ng + nh + k)]);
    } else {
      // P(y R_g x) is G(0) when x already satisfies g, G(g(x)) otherwise.
      for (std::size_t i = 0; i < ng; ++i) value *= g_cdf[i](std::max(0.0, row[static_cast<Eigen::Index>(i)]));
      for (std::size_t j = 0; j < nh; ++j) value *= h_star[j](row[static_cast<Eigen::Index>(ng + j)]);
    }
    po[r] = value;
  }
  return PoRanking::from_values(std::move(po));
}

IndexSet t_k(const PoRanking& ranking, double k, bool strict) {
  if (!(k >= 0.0)) throw std::invalid_argument("t_k: k must be >= 0");
  IndexSet out;
  for (std::size_t i = 0; i < ranking.po.size(); ++i)
    if (strict ? ranking.po[i] < k : ranking.po[i] <= k) out.push_back(i);
  return out;
}

std::vector<std::size_t> pareto_fronts(const PointSet& ps, const RelationSpec& rel) {
  check_dimension(rel, ps.dim());
  const std::size_t n = ps.size();
  std::vector<std::size_t> dominator_count(n, 0);
  std::vector<IndexSet> dominated(n);
  for_each_pair_verdict(ps, rel, [&](std::size_t i, std::size_t j, int v) {
    if (v > 0) {
      dominated[i].push_back(j);
      ++dominator_count[j];
    } else if (v < 0) {
      dominated[j].push_back(i);
      ++dominator_count[i];
    }
  });

  constexpr auto unassigned = static_cast<std::size_t>(-1);
  std::vector<std::size_t> front(n, unassigned);
  IndexSet current;
  for (std::size_t i = 0; i < n; ++i)
    if (dominator_count[i] == 0) current.push_back(i);
  std::size_t level = 0;
  std::size_t assigned = 0;
  while (!current.empty()) {
    IndexSet next;
    for (std::size_t i : current) {
      front[i] = level;
      ++assigned;
      for (std::size_t j : dominated[i])
        if (--dominator_count[j] == 0) next.push_back(j);
    }
    std::sort(next.begin(), next.end());
    current = std::move(next);
    ++level;
  }
  if (assigned != n) throw std::invalid_argument("pareto_fronts: strict relation has a cycle");
  return front;
}

double choice(const PointSet& ps, std::span<const std::size_t> subset, const RelationSpec& rel) {
  check_dimension(rel, ps.dim());
  check_indices(ps, subset);
  double total = 0.0;
  for (std::size_t a = 0; a < subset.size(); ++a) {
    const std::size_t i = subset[a];
    total += ps.weight(i) * ps.weight(i);
    for (std::size_t b = a + 1; b < subset.size(); ++b) {
      const std::size_t j = subset[b];
      if (holds_unchecked(rel, ps.row(i), ps.row(j)) == holds_unchecked(rel, ps.row(j), ps.row(i)))
        total += 2.0 * ps.weight(i) * ps.weight(j);
    }
  }
  return total;
}

bool is_selection(const PointSet& ps, std::span<const std::size_t> subset, const RelationSpec& rel) {
  check_dimension(rel, ps.dim());
  check_indices(ps, subset);
  std::vector<bool> inside(ps.size(), false);
  for (std::size_t i : subset) inside[i] = true;
  for (std::size_t i : subset) {
    for (std::size_t j = 0; j < ps.size(); ++j) {
      if (inside[j]) continue;
      if (holds_unchecked(rel, ps.row(j), ps.row(i)) && !holds_unchecked(rel, ps.row(i), ps.row(j)))
        return false;
    }
  }
  return true;
}

double choice_of_selection(const PointSet& ps, std::span<const std::size_t> subset,
                           const PoRanking& ranking, const RelationSpec& rel) {
  if (ranking.size() != ps.size()) throw DimensionError("choice_of_selection: ranking does not match point set");
  if (!is_selection(ps, subset, rel)) throw std::invalid_argument("choice_of_selection: subset is not a selection");
  const double mass = measure_of(ps.measure, subset);
  double weighted_po = 0.0;
  for (std::size_t i : subset) weighted_po += ps.weight(i) * ranking.po[i];
  return mass * mass - 2.0 * weighted_po;
}

double diversity(const PointSet& ps, std::span<const std::size_t> subset, const RelationSpec& rel) {
  if (subset.empty()) throw std::invalid_argument("diversity: empty subset");
  const double mass = measure_of(ps.measure, subset);
  return choice(ps, subset, rel) / (mass * mass);
}

PointSet poset_point_set(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& covers,
                         std::vector<double> weights) {
  if (n == 0) throw std::invalid_argument("poset_point_set: empty poset");
  // below(i, j): j is in the down-set of i.
  std::vector<std::vector<bool>> below(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) below[i][i] = true;
  for (const auto& [lo, hi] : covers) {
    if (lo >= n || hi >= n) throw std::out_of_range("poset_point_set: cover index out of range");
    below[hi][lo] = true;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (below[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (below[k][j]) below[i][j] = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (below[i][j] && below[j][i]) throw std::invalid_argument("poset_point_set: covers contain a cycle");

  Points p(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      p(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = below[i][j] ? 1.0 : 0.0;
  if (weights.empty()) return PointSet(std::move(p));
  return PointSet(std::move(p), DiscreteMeasure(std::move(weights)));
}

}  // namespace kpo
