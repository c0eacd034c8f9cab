#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "mdf/datagen.hpp"
#include "mdf/io.hpp"
#include "mdf/rng.hpp"

namespace mdf {
namespace {

ShapeObject regular_polygon(std::size_t m, double radius, double cx, double cy) {
  Eigen::MatrixX2d pts(static_cast<Eigen::Index>(m), 2);
  for (std::size_t j = 0; j < m; ++j) {
    const double phi = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(m);
    pts(static_cast<Eigen::Index>(j), 0) = cx + radius * std::cos(phi);
    pts(static_cast<Eigen::Index>(j), 1) = cy + radius * std::sin(phi);
  }
  return ShapeObject(std::move(pts));
}

double max_landmark_error(const Eigen::MatrixX2d& a, const Eigen::MatrixX2d& b) {
  return (a - b).rowwise().norm().maxCoeff();
}

TEST(SyntheticBase, DenseSpdWithPositiveQuantile) {
  const SpdScenario sc = SpdScenario::from_base(synthetic_spd_base(20));
  EXPECT_LT((sc.factor * sc.factor.transpose() - sc.base.entries()).norm(), 1e-8);
  EXPECT_GT(sc.q, 0.0);
  EXPECT_EQ(sc.lower_positions.size(), 210U);
}

TEST(Quantile, LinearInterpolation) {
  EXPECT_DOUBLE_EQ(quantile({1, 2, 3, 4, 5}, 0.5), 3.0);
  EXPECT_DOUBLE_EQ(quantile({4, 1, 2, 3}, 0.05), 1.15);
  EXPECT_DOUBLE_EQ(quantile({7}, 0.3), 7.0);
  EXPECT_THROW(quantile({}, 0.5), std::invalid_argument);
}

TEST(PerturbedSpd, ZeroScaleReturnsBase) {
  const SpdScenario sc = SpdScenario::from_base(synthetic_spd_base(6));
  Rng rng = substream(1, {0});
  const ScalarSampler v = [](Rng& r) { return std::cauchy_distribution<double>()(r); };
  const PerturbedSpd out = perturbed_spd(sc, 0.0, v, rng);
  EXPECT_LT((out.matrix.entries() - sc.base.entries()).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_FALSE(out.jittered);
}

TEST(PerturbedSpd, DrawsAreSymmetricPositiveDefinite) {
  const SpdScenario sc = SpdScenario::from_base(synthetic_spd_base(10));
  Rng rng = substream(2, {0});
  const ScalarSampler v = [](Rng& r) { return std::cauchy_distribution<double>()(r); };
  for (int i = 0; i < 300; ++i) {
    const PerturbedSpd out = perturbed_spd(sc, 8.0, v, rng);
    const Eigen::MatrixXd& p = out.matrix.entries();
    EXPECT_LE((p - p.transpose()).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_GT(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(p).eigenvalues().minCoeff(), 0.0);
  }
}

TEST(PerturbedSpd, TouchesExactlySparsityFactorEntries) {
  const SpdScenario sc = SpdScenario::from_base(synthetic_spd_base(8), 3);
  Rng rng = substream(3, {0});
  const ScalarSampler one = [](Rng&) { return 1.0; };
  const PerturbedSpd out = perturbed_spd(sc, 1.0, one, rng);
  const Eigen::MatrixXd diff = out.matrix.cholesky_factor() - sc.factor;
  EXPECT_EQ((diff.array().abs() > 1e-9).count(), 3);
  EXPECT_TRUE(diff.isLowerTriangular(1e-9));
}

TEST(Efa, CircleFirstHarmonicReconstruction) {
  const ShapeObject circle = regular_polygon(360, 2.0, 0.0, 0.0);
  const EfaCoefficients one = efa_coefficients(circle, 1);
  EXPECT_LT(max_landmark_error(efa_reconstruct(one, 360), circle.landmarks()), 1e-3);
}

TEST(Efa, CircleHigherHarmonicsVanish) {
  const EfaCoefficients coef = efa_coefficients(regular_polygon(360, 1.5, 0.0, 0.0), 12);
  for (std::size_t h = 1; h < coef.order(); ++h)
    for (const double v : coef.harmonics[h]) EXPECT_NEAR(v, 0.0, 1e-10) << "harmonic " << h + 1;
  EXPECT_NEAR(coef.a0, 0.0, 1e-12);
  EXPECT_NEAR(coef.c0, 0.0, 1e-12);
}

TEST(Efa, TranslationChangesOnlyConstantTerms) {
  const ShapeObject base = synthetic_outline();
  Eigen::MatrixX2d moved = base.landmarks();
  moved.rowwise() += Eigen::RowVector2d(3.0, -7.0);
  const EfaCoefficients a = efa_coefficients(base, 12);
  const EfaCoefficients b = efa_coefficients(ShapeObject(moved), 12);
  EXPECT_NEAR(b.a0 - a.a0, 6.0, 1e-10);
  EXPECT_NEAR(b.c0 - a.c0, -14.0, 1e-10);
  EXPECT_NEAR(a.period, b.period, 1e-12);
  for (std::size_t h = 0; h < a.order(); ++h)
    for (std::size_t e = 0; e < 4; ++e) EXPECT_NEAR(a.harmonics[h][e], b.harmonics[h][e], 1e-10);
}

ShapeObject shipped_outline() {
  const ObjectList objects = read_objects(std::filesystem::path(MDF_DATA_DIR) / "kidney_outline.csv", ObjectType::shape);
  return std::get<std::vector<ShapeObject>>(objects).front();
}

TEST(Efa, ShippedOutlineMatchesGenerator) {
  EXPECT_LT((shipped_outline().landmarks() - synthetic_outline().landmarks()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Efa, MoreHarmonicsFitTheOutlineBetter) {
  const ShapeObject outline = shipped_outline();
  const auto m = static_cast<std::size_t>(outline.size());
  // Reconstruction points sit at equal steps of arc length; compare against
  // the outline evaluated at the same parameters.
  const std::vector<double> t = chord_parameters(outline);
  auto error = [&](std::size_t n) {
    const EfaCoefficients coef = efa_coefficients(outline, n);
    double worst = 0.0;
    for (std::size_t j = 0; j < m; ++j)
      worst = std::max(worst, (efa_evaluate(coef, t[j]) - outline.landmarks().row(static_cast<Eigen::Index>(j)).transpose()).norm());
    return worst;
  };
  EXPECT_LE(error(20), error(5));
  EXPECT_LT(error(20), 0.05);
}

TEST(Efa, ZeroHarmonicsGiveTheCentre) {
  EfaCoefficients coef;
  coef.a0 = 2.0;
  coef.c0 = -4.0;
  coef.period = 3.0;
  coef.harmonics.assign(4, {0.0, 0.0, 0.0, 0.0});
  const Eigen::MatrixX2d q = efa_reconstruct(coef, 7);
  for (Eigen::Index j = 0; j < q.rows(); ++j) {
    EXPECT_DOUBLE_EQ(q(j, 0), 1.0);
    EXPECT_DOUBLE_EQ(q(j, 1), -2.0);
  }
}

TEST(Efa, InvalidInputs) {
  // A zero-perimeter outline is already refused by ShapeObject.
  EXPECT_THROW(ShapeObject(Eigen::MatrixX2d::Zero(5, 2)), std::invalid_argument);
  EXPECT_THROW(efa_coefficients(synthetic_outline(), 0), std::invalid_argument);
}

TEST(RandomShape, IdentityPerturbationReproducesReconstruction) {
  const EfaCoefficients coef = efa_coefficients(synthetic_outline(), 12);
  const std::vector<std::array<double, 4>> ones(coef.order(), {1.0, 1.0, 1.0, 1.0});
  EXPECT_LT(max_landmark_error(shape_from_perturbations(coef, ones, 50, 1.0, 0.0), efa_reconstruct(coef, 50)), 1e-14);

  const ShapeObject a(shape_from_perturbations(coef, ones, 50, 3.5, 1.1));
  const ShapeObject b(shape_from_perturbations(coef, ones, 50, 17.0, 4.0));
  EXPECT_NEAR(riemannian_shape_distance(a, b), 0.0, 1e-7);
}

TEST(RandomShape, SamplerBounds) {
  const PerturbationSampler s = first_harmonic_sampler(0.3, 1.7);
  Rng rng = substream(4, {0});
  for (int i = 0; i < 200; ++i) {
    for (const double v : s(1, rng)) {
      EXPECT_GE(v, 0.3);
      EXPECT_LE(v, 1.7);
    }
    for (const double v : s(2, rng)) {
      EXPECT_GE(v, 0.8);
      EXPECT_LE(v, 1.2);
    }
  }
  const EfaCoefficients coef = efa_coefficients(synthetic_outline(), 12);
  EXPECT_EQ(random_shape(coef, s, 50, rng).size(), 50);
}

TEST(Scenarios, ReproducibleFromSeed) {
  const ScenarioLibrary lib(ScenarioConfig{.spd_dim = 5});
  for (const auto& name : ScenarioLibrary::names()) {
    Rng r1 = substream(9, {0});
    Rng r2 = substream(9, {0});
    const Dataset a = lib.generate(name, 0.5, 6, r1);
    const Dataset b = lib.generate(name, 0.5, 6, r2);
    ASSERT_EQ(a.components.size(), b.components.size());
    for (std::size_t k = 0; k < a.components.size(); ++k)
      EXPECT_EQ(object_distances(a.components[k], a.metrics[k]), object_distances(b.components[k], b.metrics[k]));
    EXPECT_EQ(a.is_two_sample(), ScenarioLibrary::is_homogeneity(name));
    EXPECT_EQ(object_count(a.components[0]), a.is_two_sample() ? 12U : 6U);
  }
}

TEST(Scenarios, NullSpdHomogeneityUsesOneLawForBothGroups) {
  const ScenarioLibrary lib(ScenarioConfig{.spd_dim = 4});
  Rng rng = substream(10, {0});
  const Dataset d = lib.generate("spd-hom", 1.0, 3, rng);
  EXPECT_EQ(d.groups, (std::vector<std::uint8_t>{0, 0, 0, 1, 1, 1}));
  EXPECT_EQ(d.metrics, std::vector<MetricKind>{MetricKind::cholesky});
}

TEST(Scenarios, Errors) {
  const ScenarioLibrary lib(ScenarioConfig{.spd_dim = 4});
  Rng rng = substream(11, {0});
  EXPECT_THROW(lib.generate("swiss-roll", 1.0, 5, rng), std::invalid_argument);
  EXPECT_THROW(lib.generate("spd-hom", -1.0, 5, rng), std::invalid_argument);
  EXPECT_THROW(lib.generate("shape-ind", 1.5, 5, rng), std::invalid_argument);
  EXPECT_THROW(lib.generate("spd-ind", 0.5, 0, rng), std::invalid_argument);
}

TEST(Scenarios, ChecksumTracksBase) {
  EXPECT_EQ(ScenarioLibrary(ScenarioConfig{.spd_dim = 5}).base_checksum(),
            ScenarioLibrary(ScenarioConfig{.spd_dim = 5}).base_checksum());
  EXPECT_NE(ScenarioLibrary(ScenarioConfig{.spd_dim = 5}).base_checksum(),
            ScenarioLibrary(ScenarioConfig{.spd_dim = 6}).base_checksum());
}

}  // namespace
}  // namespace mdf
