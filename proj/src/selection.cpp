#include "kpo/selection.hpp"

#include "kpo/posort.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace kpo {

std::string_view to_string(Selector s) {
  switch (s) {
    case Selector::Nsga2: return "nsga2";
    case Selector::PoCount: return "po_count";
    case Selector::PoProb: return "po_prob";
  }
  return "?";
}

std::optional<Selector> parse_selector(std::string_view text) {
  if (text == "nsga2") return Selector::Nsga2;
  if (text == "po_count") return Selector::PoCount;
  if (text == "po_prob") return Selector::PoProb;
  return std::nullopt;
}

std::vector<IndexSet> nondominated_sort(const Points& objectives, Orientation orientation) {
  const auto dims = static_cast<std::size_t>(objectives.cols());
  const auto rel = RelationSpec::componentwise(std::vector<Orientation>(dims, orientation));
  const auto front = pareto_fronts(PointSet(objectives), rel);
  std::vector<IndexSet> fronts;
  for (std::size_t i = 0; i < front.size(); ++i) {
    if (front[i] >= fronts.size()) fronts.resize(front[i] + 1);
    fronts[front[i]].push_back(i);
  }
  return fronts;
}

std::vector<double> crowding_distance(const Points& objectives, std::span<const std::size_t> members) {
  const std::size_t n = members.size();
  std::vector<double> distance(n, 0.0);
  if (n <= 2) {
    std::fill(distance.begin(), distance.end(), std::numeric_limits<double>::infinity());
    return distance;
  }
  std::vector<std::size_t> pos(n);
  for (Eigen::Index d = 0; d < objectives.cols(); ++d) {
    std::iota(pos.begin(), pos.end(), std::size_t{0});
    auto value = [&](std::size_t k) { return objectives(static_cast<Eigen::Index>(members[k]), d); };
    std::stable_sort(pos.begin(), pos.end(), [&](std::size_t a, std::size_t b) { return value(a) < value(b); });
    const double lo = value(pos.front());
    const double hi = value(pos.back());
    distance[pos.front()] = std::numeric_limits<double>::infinity();
    distance[pos.back()] = std::numeric_limits<double>::infinity();
    if (hi == lo) continue;
    for (std::size_t k = 1; k + 1 < n; ++k)
      distance[pos[k]] += (value(pos[k + 1]) - value(pos[k - 1])) / (hi - lo);
  }
  return distance;
}

namespace {

// Takes `count` members of `group` with the largest crowding distance.
void take_most_crowded(const Points& objectives, const IndexSet& group, std::size_t count, IndexSet& out) {
  const auto dist = crowding_distance(objectives, group);
  std::vector<std::size_t> pos(group.size());
  std::iota(pos.begin(), pos.end(), std::size_t{0});
  std::stable_sort(pos.begin(), pos.end(), [&](std::size_t a, std::size_t b) { return dist[a] > dist[b]; });
  for (std::size_t k = 0; k < count; ++k) out.push_back(group[pos[k]]);
}

IndexSet fill_by_groups(const Points& objectives, const std::vector<IndexSet>& groups, std::size_t survivors) {
  IndexSet out;
  out.reserve(survivors);
  for (const auto& g : groups) {
    const std::size_t room = survivors - out.size();
    if (room == 0) break;
    if (g.size() <= room) {
      out.insert(out.end(), g.begin(), g.end());
    } else {
      take_most_crowded(objectives, g, room, out);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

IndexSet environmental_selection(const Points& objectives, Selector selector, std::size_t survivors,
                                 Orientation orientation) {
  const auto n = static_cast<std::size_t>(objectives.rows());
  if (survivors > n) throw std::invalid_argument("environmental_selection: more survivors than candidates");
  if (survivors == n) {
    IndexSet all(n);
    std::iota(all.begin(), all.end(), std::size_t{0});
    return all;
  }
  const auto dims = static_cast<std::size_t>(objectives.cols());
  switch (selector) {
    case Selector::Nsga2:
      return fill_by_groups(objectives, nondominated_sort(objectives, orientation), survivors);
    case Selector::PoCount: {
      const auto rel = RelationSpec::componentwise(std::vector<Orientation>(dims, orientation));
      return fill_by_groups(objectives, po_exact(PointSet(objectives), rel).classes, survivors);
    }
    case Selector::PoProb: {
      const std::vector<Orientation> orient(dims, orientation);
      return fill_by_groups(objectives, po_prob(PointSet(objectives), orient).classes, survivors);
    }
  }
  throw std::invalid_argument("environmental_selection: unknown selector");
}

}  // namespace kpo
