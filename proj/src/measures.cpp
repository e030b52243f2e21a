#include "kpo/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace kpo {

DiscreteMeasure::DiscreteMeasure(std::vector<double> weights) : weights_(std::move(weights)) {
  for (double w : weights_) {
    if (!(w > 0.0) || !std::isfinite(w)) throw std::invalid_argument("DiscreteMeasure: weights must be positive and finite");
    total_ += w;
    uniform_ = uniform_ && w == weights_.front();
  }
}

double measure_of(const DiscreteMeasure& measure, std::span<const std::size_t> subset) {
  double sum = 0.0;
  for (std::size_t i : subset) sum += measure.weight(i);
  return sum;
}

Ecdf Ecdf::build(std::span<const double> values, std::span<const double> weights) {
  if (values.empty()) throw std::invalid_argument("Ecdf: empty sample");
  if (!weights.empty() && weights.size() != values.size())
    throw std::invalid_argument("Ecdf: one weight per value required");

  const std::size_t n = values.size();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

  Ecdf e;
  // Walk the sorted values; whenever a new distinct value starts, close the
  // previous one with the mass accumulated so far.
  const bool counting = weights.empty();
  const double total = counting ? static_cast<double>(n)
                                : std::accumulate(weights.begin(), weights.end(), 0.0);
  double running = 0.0;
  std::size_t count = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double v = values[idx[k]];
    if (k > 0 && v != values[idx[k - 1]]) {
      e.values_.push_back(values[idx[k - 1]]);
      e.cumulative_.push_back(counting ? static_cast<double>(count) / total : running / total);
    }
    ++count;
    running += counting ? 1.0 : weights[idx[k]];
  }
  e.values_.push_back(values[idx[n - 1]]);
  e.cumulative_.push_back(1.0);
  return e;
}

double Ecdf::query(double v) const {
  auto it = std::upper_bound(values_.begin(), values_.end(), v);
  if (it == values_.begin()) return 0.0;
  return cumulative_[static_cast<std::size_t>(it - values_.begin()) - 1];
}

double Ecdf::query_below(double v) const {
  auto it = std::lower_bound(values_.begin(), values_.end(), v);
  if (it == values_.begin()) return 0.0;
  return cumulative_[static_cast<std::size_t>(it - values_.begin()) - 1];
}

double Ecdf::point_mass(double v) const {
  auto it = std::lower_bound(values_.begin(), values_.end(), v);
  if (it == values_.end() || *it != v) return 0.0;
  const auto k = static_cast<std::size_t>(it - values_.begin());
  return k == 0 ? cumulative_[0] : cumulative_[k] - cumulative_[k - 1];
}

HStar HStar::build(std::span<const double> values, double a, double b) {
  if (values.empty()) throw std::invalid_argument("HStar: empty sample");
  if (!(a <= b)) throw std::invalid_argument("HStar: a must be <= b");
  HStar h;
  h.sorted_.assign(values.begin(), values.end());
  std::sort(h.sorted_.begin(), h.sorted_.end());
  h.a_ = a;
  h.b_ = b;
  return h;
}

std::size_t HStar::count_between(double lo, double hi) const {
  auto first = std::lower_bound(sorted_.begin(), sorted_.end(), lo);
  auto last = std::upper_bound(sorted_.begin(), sorted_.end(), hi);
  return last > first ? static_cast<std::size_t>(last - first) : 0;
}

double HStar::operator()(double z) const {
  const double n = static_cast<double>(sorted_.size());
  if (z < a_) return static_cast<double>(count_between(z, b_)) / n;
  if (z <= b_) return static_cast<double>(count_between(a_, b_)) / n;
  return static_cast<double>(count_between(a_, z)) / n;
}

}  // namespace kpo
