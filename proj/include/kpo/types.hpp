#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace kpo {

/// Rows are items, columns are coordinates. Row-major so that a row is a
/// contiguous vector.
using Points = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vec = Eigen::RowVectorXd;
using VecRef = Eigen::Ref<const Eigen::RowVectorXd>;

using IndexSet = std::vector<std::size_t>;

enum class Orientation { Min, Max };

/// Input data that cannot be processed (malformed CSV, duplicates where
/// forbidden, empty tables).
class DataError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Vector lengths disagree with what a relation or layout expects.
class DimensionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

inline Vec vec(std::initializer_list<double> values) {
  Vec v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

inline Points points_from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) return Points(0, 0);
  Points p(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.front().size())
      throw DimensionError("points_from_rows: ragged rows");
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      p(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  }
  return p;
}

}  // namespace kpo
