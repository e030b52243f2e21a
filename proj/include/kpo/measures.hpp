#pragma once

#include "kpo/types.hpp"

#include <span>
#include <vector>

namespace kpo {

/// Positive weights over a finite item set; the power set is the
/// sigma-algebra, so every subset is measurable.
class DiscreteMeasure {
public:
  DiscreteMeasure() = default;
  explicit DiscreteMeasure(std::vector<double> weights);

  /// Counting measure on n items.
  static DiscreteMeasure counting(std::size_t n) { return DiscreteMeasure(std::vector<double>(n, 1.0)); }

  std::size_t size() const noexcept { return weights_.size(); }
  double weight(std::size_t i) const { return weights_.at(i); }
  const std::vector<double>& weights() const noexcept { return weights_; }
  double total() const noexcept { return total_; }
  bool is_uniform() const noexcept { return uniform_; }

private:
  std::vector<double> weights_;
  double total_ = 0.0;
  bool uniform_ = true;
};

/// Sum of weights over `subset`. Throws std::out_of_range on a bad index.
double measure_of(const DiscreteMeasure& measure, std::span<const std::size_t> subset);

/// Empirical cumulative distribution of a sample, optionally weighted.
/// Stores the distinct values in ascending order together with the
/// cumulative mass up to each of them; queries are binary searches.
class Ecdf {
public:
  /// Throws std::invalid_argument on empty input or a weight count that does
  /// not match. Empty `weights` means every value has mass 1/n.
  static Ecdf build(std::span<const double> values, std::span<const double> weights = {});

  /// Mass of values <= v.
  double operator()(double v) const { return query(v); }
  double query(double v) const;

  /// Mass of values < v.
  double query_below(double v) const;

  /// Mass of values >= v.
  double query_at_least(double v) const { return 1.0 - query_below(v); }

  /// Mass of values == v.
  double point_mass(double v) const;

  const std::vector<double>& sorted_distinct_values() const noexcept { return values_; }
  const std::vector<double>& cumulative_mass() const noexcept { return cumulative_; }

private:
  std::vector<double> values_;
  std::vector<double> cumulative_;
};

/// Interval-anchored empirical function for an equality constraint h in
/// [a, b]: the share of the sample that is at least as close to the band as
/// z, in the sense of the band relation.
///   z < a       : #{z <= h <= b} / n
///   a <= z <= b : #{a <= h <= b} / n
///   z > b       : #{a <= h <= z} / n
class HStar {
public:
  static HStar build(std::span<const double> values, double a, double b);

  double operator()(double z) const;

  double lower() const noexcept { return a_; }
  double upper() const noexcept { return b_; }

private:
  std::size_t count_between(double lo, double hi) const;

  std::vector<double> sorted_;
  double a_ = 0.0;
  double b_ = 0.0;
};

}  // namespace kpo
