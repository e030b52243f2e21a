#include "kpo/posort.hpp"

#include <algorithm>
#include <cmath>

namespace kpo {

namespace {

struct OracleSearch {
  std::size_t n = 0;
  std::vector<std::size_t> topo;           // dominators before dominated
  std::vector<std::uint32_t> dominators;   // bitmask of strict dominators per item
  std::vector<std::uint32_t> choice_with;  // bitmask of items offering choice with each item
  std::vector<double> w;
  double limit = 0.0;

  double best = -1.0;
  std::vector<std::uint32_t> best_masks;
  std::uint64_t visited = 0;

  double tolerance() const { return 1e-9 * std::max(1.0, std::abs(best)); }

  void record(std::uint32_t mask, double value) {
    ++visited;
    if (value > best + tolerance()) {
      best = value;
      best_masks.clear();
      best_masks.push_back(mask);
    } else if (std::abs(value - best) <= tolerance()) {
      best_masks.push_back(mask);
    }
  }

  void extend(std::size_t pos, std::uint32_t mask, double mass, double value) {
    if (pos == n) {
      record(mask, value);
      return;
    }
    const std::size_t i = topo[pos];
    extend(pos + 1, mask, mass, value);
    if ((dominators[i] & ~mask) != 0) return;
    if (mass + w[i] > limit) return;
    double gain = w[i] * w[i];
    for (std::size_t j = 0; j < n; ++j)
      if ((mask >> j & 1U) && (choice_with[i] >> j & 1U)) gain += 2.0 * w[i] * w[j];
    extend(pos + 1, mask | (1U << i), mass + w[i], value + gain);
  }
};

}  // namespace

OracleResult max_choice_oracle(const PointSet& ps, const RelationSpec& rel, double m) {
  const std::size_t n = ps.size();
  if (n > kOracleMaxItems) throw std::invalid_argument("max_choice_oracle: at most 16 items");
  check_dimension(rel, ps.dim());

  OracleSearch s;
  s.n = n;
  s.limit = m;
  s.w = ps.measure.weights();
  s.dominators.assign(n, 0);
  s.choice_with.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const bool ij = detail::holds_unchecked(rel, ps.row(i), ps.row(j));
      const bool ji = detail::holds_unchecked(rel, ps.row(j), ps.row(i));
      if (ji && !ij) s.dominators[i] |= 1U << j;
      if (ij == ji) s.choice_with[i] |= 1U << j;
    }
  }

  // Kahn's algorithm, smallest index first.
  std::vector<bool> placed(n, false);
  std::uint32_t placed_mask = 0;
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t pick = n;
    for (std::size_t i = 0; i < n && pick == n; ++i)
      if (!placed[i] && (s.dominators[i] & ~placed_mask) == 0) pick = i;
    if (pick == n) throw std::invalid_argument("max_choice_oracle: strict relation has a cycle");
    placed[pick] = true;
    placed_mask |= 1U << pick;
    s.topo.push_back(pick);
  }

  s.extend(0, 0U, 0.0, 0.0);

  OracleResult result;
  result.best_choice = s.best;
  result.selections_visited = s.visited;
  for (std::uint32_t mask : s.best_masks) {
    IndexSet set;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1U) set.push_back(i);
    result.maximizers.push_back(std::move(set));
  }
  std::sort(result.maximizers.begin(), result.maximizers.end());
  return result;
}

}  // namespace kpo
