#pragma once

// Hand-rolled generators and brute-force reference implementations shared by
// the unit tests and the acceptance binary. The references use nothing from
// the library except the data types, so they can serve as oracles.

#include "kpo/posort.hpp"
#include "kpo/rng.hpp"
#include "kpo/types.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace kpo::testing {

/// n points with integer coordinates in [0, levels), so ties are common.
inline Points random_lattice_points(Rng& rng, std::size_t n, std::size_t dims, int levels) {
  Points p(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(dims));
  for (Eigen::Index r = 0; r < p.rows(); ++r)
    for (Eigen::Index c = 0; c < p.cols(); ++c) p(r, c) = static_cast<double>(rng.uniform_int(0, levels - 1));
  return p;
}

inline Points random_real_points(Rng& rng, std::size_t n, std::size_t dims) {
  Points p(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(dims));
  for (Eigen::Index r = 0; r < p.rows(); ++r)
    for (Eigen::Index c = 0; c < p.cols(); ++c) p(r, c) = rng.uniform();
  return p;
}

/// Small integer weights keep every sum exact in double arithmetic.
inline std::vector<double> random_int_weights(Rng& rng, std::size_t n, int max_weight) {
  std::vector<double> w(n);
  for (auto& x : w) x = static_cast<double>(rng.uniform_int(1, max_weight));
  return w;
}

/// Random DAG on n nodes: edge i -> j (i < j, i preferable) with probability p.
inline std::vector<std::pair<std::size_t, std::size_t>> random_dag(Rng& rng, std::size_t n, double p) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (rng.bernoulli(p)) edges.emplace_back(i, j);
  return edges;
}

/// Componentwise weak preference written out directly.
inline bool ref_weakly_better(const Points& p, std::size_t x, std::size_t y, bool maximise) {
  for (Eigen::Index c = 0; c < p.cols(); ++c) {
    const double a = p(static_cast<Eigen::Index>(x), c), b = p(static_cast<Eigen::Index>(y), c);
    if (maximise ? a < b : a > b) return false;
  }
  return true;
}

inline bool ref_strictly_better(const Points& p, std::size_t x, std::size_t y, bool maximise) {
  return ref_weakly_better(p, x, y, maximise) && !ref_weakly_better(p, y, x, maximise);
}

/// po by definition under componentwise order.
inline std::vector<double> ref_po(const Points& p, const std::vector<double>& w, bool maximise = false) {
  const auto n = static_cast<std::size_t>(p.rows());
  std::vector<double> po(n, 0.0);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (ref_strictly_better(p, y, x, maximise)) po[x] += w[y];
  return po;
}

/// Choice by definition: double sum over ordered pairs offering choice.
inline double ref_choice(const Points& p, const std::vector<double>& w, const std::vector<std::size_t>& subset,
                         bool maximise = false) {
  double c = 0.0;
  for (std::size_t x : subset)
    for (std::size_t y : subset)
      if (ref_weakly_better(p, x, y, maximise) == ref_weakly_better(p, y, x, maximise)) c += w[x] * w[y];
  return c;
}

/// Every subset closed under strict dominators, as bitmasks (n <= 16).
inline std::vector<std::uint32_t> ref_all_selections(const Points& p, bool maximise = false) {
  const auto n = static_cast<std::size_t>(p.rows());
  std::vector<std::uint32_t> out;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x) {
      if (!(mask >> x & 1u)) continue;
      for (std::size_t y = 0; y < n && ok; ++y)
        if (!(mask >> y & 1u) && ref_strictly_better(p, y, x, maximise)) ok = false;
    }
    if (ok) out.push_back(mask);
  }
  return out;
}

inline std::vector<std::size_t> mask_members(std::uint32_t mask, std::size_t n) {
  std::vector<std::size_t> s;
  for (std::size_t i = 0; i < n; ++i)
    if (mask >> i & 1u) s.push_back(i);
  return s;
}

/// Kendall tau from concordant minus discordant pairs over all n(n-1)/2
/// pairs; ties in one coordinate count as neither.
inline double ref_kendall_tau(const Points& p) {
  const auto n = p.rows();
  double concordant = 0.0, discordant = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double s = (p(i, 0) - p(j, 0)) * (p(i, 1) - p(j, 1));
      if (s > 0) concordant += 1;
      if (s < 0) discordant += 1;
    }
  return (concordant - discordant) / (static_cast<double>(n) * static_cast<double>(n - 1) / 2.0);
}

/// Hypervolume of integer-coordinate points by counting unit cells.
inline double ref_lattice_hypervolume(const Points& p) {
  const auto dims = p.cols();
  std::vector<int> hi(static_cast<std::size_t>(dims), 0);
  for (Eigen::Index c = 0; c < dims; ++c) hi[static_cast<std::size_t>(c)] = static_cast<int>(p.col(c).maxCoeff());
  std::vector<int> cell(static_cast<std::size_t>(dims), 0);
  double count = 0;
  while (true) {
    for (Eigen::Index r = 0; r < p.rows(); ++r) {
      bool covered = true;
      for (Eigen::Index c = 0; c < dims && covered; ++c) covered = p(r, c) >= cell[static_cast<std::size_t>(c)] + 1;
      if (covered) {
        count += 1;
        break;
      }
    }
    std::size_t d = 0;
    while (d < cell.size() && ++cell[d] >= hi[d]) cell[d++] = 0;
    if (d == cell.size()) break;
  }
  return count;
}

/// Strictly increasing maps used for rank-invariance checks.
inline double monotone_map(int which, double v) {
  switch (which % 3) {
    case 0: return std::exp(v);
    case 1: return v * v * v;
    default: return 3.5 * v - 2.0;
  }
}

}  // namespace kpo::testing
