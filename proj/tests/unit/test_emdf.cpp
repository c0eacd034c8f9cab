#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "mdf/emdf.hpp"
#include "support/oracles.hpp"

namespace mdf {
namespace {

DistanceMatrix line_matrix(const std::vector<double>& xs) {
  const std::size_t n = xs.size();
  std::vector<double> d(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d[i * n + j] = std::abs(xs[i] - xs[j]);
  return DistanceMatrix(n, std::move(d));
}

TEST(Emdf, ThreePointsOnALine) {
  const MultiDistance md({line_matrix({0, 1, 3})});
  const EmdfMatrix f = emdf_matrix(md);
  const double third = 1.0 / 3.0;
  const double expected[3][3] = {{third, 2 * third, 1}, {2 * third, third, 1}, {1, 2 * third, third}};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_DOUBLE_EQ(f(i, j), expected[i][j]) << i << "," << j;
}

TEST(Emdf, SingleObject) {
  const MultiDistance md({DistanceMatrix(1, {0.0}), DistanceMatrix(1, {0.0})});
  EXPECT_EQ(emdf_matrix(md).data(), std::vector<double>{1.0});
}

TEST(Emdf, MatchesOracleOnTiedRandomInstances) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng() % 10;
    const std::size_t k = 1 + rng() % 3;
    const MultiDistance md = oracle::random_multi_distance(n, k, rng, 1 + static_cast<int>(rng() % 4));
    const EmdfMatrix f = emdf_matrix(md, 1 + trial % 3);
    const auto expected = oracle::emdf(oracle::raw(md));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) ASSERT_EQ(f(i, j), expected[i][j]) << "trial " << trial;
  }
}

TEST(Emdf, RangeAndRowMonotonicity) {
  std::mt19937_64 rng(4);
  const std::size_t n = 25;
  const MultiDistance md = oracle::random_multi_distance(n, 2, rng);
  const EmdfMatrix f = emdf_matrix(md);
  for (std::size_t i = 0; i < n; ++i) {
    EXPECT_GE(f(i, i), 1.0 / n);
    for (std::size_t j = 0; j < n; ++j) {
      EXPECT_GE(f(i, j), 1.0 / n);
      EXPECT_LE(f(i, j), 1.0);
      for (std::size_t v = 0; v < n; ++v) {
        const bool nested = md.component(0)(i, j) <= md.component(0)(i, v) &&
                            md.component(1)(i, j) <= md.component(1)(i, v);
        if (nested) {
          EXPECT_LE(f(i, j), f(i, v));
        }
      }
    }
  }
}

TEST(Emdf, InvariantUnderIncreasingTransforms) {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> normal;
  std::vector<Eigen::VectorXd> points;
  for (int i = 0; i < 30; ++i) points.push_back(Eigen::Vector3d(normal(rng), normal(rng), normal(rng)));
  const DistanceMatrix d = oracle::euclidean_matrix(points);
  const MultiDistance md({d, oracle::random_distance_matrix(30, rng)});
  const MultiDistance moved({oracle::transform(d, [](double x) { return x * x + std::sqrt(x); }),
                             oracle::transform(md.component(1), [](double x) { return std::expm1(x); })});
  EXPECT_EQ(emdf_matrix(md), emdf_matrix(moved));
}

TEST(Emdf, WorkerCountDoesNotChangeResult) {
  std::mt19937_64 rng(9);
  const MultiDistance md = oracle::random_multi_distance(70, 3, rng);
  EXPECT_EQ(emdf_matrix(md, 1), emdf_matrix(md, 5));
}

TEST(EmdfEval, ArbitraryCentre) {
  const std::vector<std::vector<double>> dists{{10, 11, 0, 5}};
  const std::vector<double> radius{5};
  EXPECT_DOUBLE_EQ(emdf_eval(dists, radius), 0.5);
  const std::vector<std::vector<double>> two{{1, 2, 3}, {3, 2, 1}};
  const std::vector<double> radii{2, 2};
  EXPECT_DOUBLE_EQ(emdf_eval(two, radii), 1.0 / 3.0);
}

TEST(GcDeviation, Examples) {
  const std::vector<double> two{0.2, 0.6};
  EXPECT_NEAR(gc_deviation(two, uniform_unit_mdf), 0.5, 1e-12);

  const std::vector<double> atom{0.0, 0.0, 0.0};
  EXPECT_DOUBLE_EQ(gc_deviation(atom, [](double, double) { return 1.0; }), 0.0);
}

TEST(GcDeviation, ShrinksWithSampleSize) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> unif;
  auto draw = [&](std::size_t n) {
    std::vector<double> s(n);
    for (auto& v : s) v = unif(rng);
    return s;
  };
  double small = 0.0;
  double large = 0.0;
  for (int rep = 0; rep < 5; ++rep) {
    small += gc_deviation(draw(100), uniform_unit_mdf);
    large += gc_deviation(draw(1600), uniform_unit_mdf);
  }
  EXPECT_LT(large, small);
}

TEST(MultiDistance, RejectsMismatchedComponents) {
  std::mt19937_64 rng(1);
  EXPECT_THROW(MultiDistance({oracle::random_distance_matrix(3, rng), oracle::random_distance_matrix(4, rng)}),
               std::invalid_argument);
  EXPECT_EQ(MultiDistance().size(), 0U);
}

}  // namespace
}  // namespace mdf
