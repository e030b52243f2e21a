#include "kpo/metrics.hpp"

#include "kpo/posort.hpp"
#include "support/generators.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace kpo;
namespace kt = kpo::testing;

namespace {

TEST(Hypervolume, HandComputed) {
  EXPECT_DOUBLE_EQ(hypervolume(points_from_rows({{1, 3}, {2, 2}, {3, 1}})), 6.0);
  EXPECT_DOUBLE_EQ(hypervolume(points_from_rows({{2, 2, 2}})), 8.0);
  EXPECT_DOUBLE_EQ(hypervolume(points_from_rows({{2, 1, 1}, {1, 2, 1}})), 3.0);
  EXPECT_DOUBLE_EQ(hypervolume(Points(0, 2)), 0.0);
}

TEST(Hypervolume, ExpressionArgument) {
  const Points p = points_from_rows({{1, 3}, {2, 2}, {3, 1}});
  EXPECT_DOUBLE_EQ(hypervolume(2.0 * p), 24.0);
  EXPECT_DOUBLE_EQ(hypervolume(p.topRows(1)), 3.0);
}

TEST(Hypervolume, Errors) {
  EXPECT_THROW(hypervolume(points_from_rows({{-1, 2}})), std::invalid_argument);
  EXPECT_THROW(hypervolume(Points::Ones(2, 5)), std::invalid_argument);
  EXPECT_NO_THROW(hypervolume(Points::Ones(2, 5), HvMonteCarlo{100, 1}));
}

TEST(Hypervolume, PropertyMatchesCellCount) {
  Rng rng(41);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t dims = 1 + rng.index(4);
    const Points p = kt::random_lattice_points(rng, 1 + rng.index(12), dims, 6);
    EXPECT_DOUBLE_EQ(hypervolume(p), kt::ref_lattice_hypervolume(p));
  }
}

TEST(Hypervolume, MonteCarloWithinErrorBars) {
  Rng rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    const Points p = kt::random_real_points(rng, 20, 3);
    const double exact = hypervolume(p);
    const auto est = hypervolume_estimate(p, HvMonteCarlo{50000, static_cast<std::uint64_t>(trial)});
    EXPECT_GT(est.std_error, 0.0);
    EXPECT_NEAR(est.value, exact, 5 * est.std_error);
  }
  const Points p = kt::random_real_points(rng, 20, 6);
  EXPECT_EQ(hypervolume(p, HvMonteCarlo{1000, 9}), hypervolume(p, HvMonteCarlo{1000, 9}));
}

TEST(DominatedFraction, HandAndDeduplication) {
  const Points target = points_from_rows({{1, 1}, {1, 1}, {3, 0}, {0, 3}});
  const Points dom = points_from_rows({{2, 2}});
  // Three distinct targets, one of them dominated.
  EXPECT_NEAR(dominated_fraction(target, {dom}), 100.0 / 3.0, 1e-12);
  // Equal points do not dominate each other.
  EXPECT_DOUBLE_EQ(dominated_fraction(dom, {dom}), 0.0);
  // Averaged over dominating samples.
  EXPECT_NEAR(dominated_fraction(target, {dom, points_from_rows({{4, 4}})}), 50.0 * (1.0 / 3.0 + 1.0), 1e-12);
  EXPECT_THROW(dominated_fraction(target, {}), std::invalid_argument);
  EXPECT_THROW(dominated_fraction(target, {Points::Ones(1, 3)}), DimensionError);
}

TEST(DominatedFraction, PropertyStrictDominanceIsOneSided) {
  Rng rng(43);
  for (int trial = 0; trial < 50; ++trial) {
    const Points b = kt::random_real_points(rng, 10, 3);
    const Points a = b.array() + 1.0 + rng.uniform();
    EXPECT_DOUBLE_EQ(dominated_fraction(b, {a}), 100.0);
    EXPECT_DOUBLE_EQ(dominated_fraction(a, {b}), 0.0);
  }
}

TEST(Kendall, HandComputed) {
  const auto up = kendall_tau(points_from_rows({{1, 1}, {2, 2}, {3, 3}}));
  EXPECT_DOUBLE_EQ(up.tau, 1.0);
  const auto down = kendall_tau(points_from_rows({{1, 3}, {2, 2}, {3, 1}}));
  EXPECT_DOUBLE_EQ(down.tau, -1.0);
  EXPECT_DOUBLE_EQ(down.diversity, 1.0);
  EXPECT_THROW(kendall_tau(points_from_rows({{1, 1}, {1, 1}})), DataError);
  EXPECT_THROW(kendall_tau(points_from_rows({{1, 1}})), DataError);
  EXPECT_THROW(kendall_tau(points_from_rows({{1, 1, 1}, {2, 2, 2}})), DimensionError);
}

TEST(Kendall, PropertyMatchesPairCounter) {
  Rng rng(44);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng.index(80);
    const Points p = kt::random_real_points(rng, n, 2);
    const auto r = kendall_tau(p);
    EXPECT_NEAR(r.tau, kt::ref_kendall_tau(p), 1e-12);
    EXPECT_LE(std::abs(r.tau - r.via_choice), 2.0 / static_cast<double>(n));
  }
}

TEST(Uncorrelated, HandComputed) {
  // A chain of two already has diversity exactly 1/2.
  EXPECT_EQ(largest_uncorrelated_pareto_set(points_from_rows({{1, 1}, {2, 2}})), (IndexSet{0, 1}));
  EXPECT_EQ(largest_uncorrelated_pareto_set(points_from_rows({{1, 1}, {2, 2}, {3, 3}})), (IndexSet{1, 2}));
  EXPECT_EQ(largest_uncorrelated_pareto_set(points_from_rows({{1, 3}, {2, 2}, {3, 1}})), (IndexSet{0, 1, 2}));
}

// Result is a T_k with diversity >= 1/2 and every larger T_k falls below.
TEST(Uncorrelated, PropertyLargestQualifyingTk) {
  Rng rng(45);
  for (int trial = 0; trial < 50; ++trial) {
    const Points p = kt::random_real_points(rng, 2 + rng.index(40), 2);
    const auto got = largest_uncorrelated_pareto_set(p);
    const PointSet ps(p);
    const auto rel = RelationSpec::componentwise_max(2);
    const auto r = po_exact(ps, rel);
    ASSERT_FALSE(got.empty());
    EXPECT_GE(diversity(ps, got, rel), 0.5);
    bool found = false;
    for (const auto& cls : r.classes) {
      const auto tk = t_k(r, r.po[cls.front()]);
      if (tk == got) found = true;
      else if (found) EXPECT_LT(diversity(ps, tk, rel), 0.5);
    }
    EXPECT_TRUE(found);
  }
}

}  // namespace
