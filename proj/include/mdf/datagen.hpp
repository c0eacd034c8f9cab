#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "mdf/metrics.hpp"
#include "mdf/objects.hpp"
#include "mdf/rng.hpp"

namespace mdf {

inline constexpr std::size_t kDefaultSparsity = 3;
inline constexpr std::size_t kDefaultHarmonics = 12;
inline constexpr std::size_t kDefaultLandmarks = 50;
inline constexpr std::size_t kDefaultSpdDim = 20;
inline constexpr double kJitter = 1e-10;

// ---------------------------------------------------------------------------
// SPD matrices
// ---------------------------------------------------------------------------

/// Base matrix A, its Cholesky factor L, and the perturbation unit q
/// (5% quantile of |vec(A)|).
struct SpdScenario {
  SpdMatrix base;
  Eigen::MatrixXd factor;
  double q = 0.0;
  std::size_t sparsity = kDefaultSparsity;
  /// (row, col) positions of the lower triangle, diagonal included.
  std::vector<std::pair<Eigen::Index, Eigen::Index>> lower_positions;

  static SpdScenario from_base(SpdMatrix base, std::size_t sparsity = kDefaultSparsity);
};

/// Deterministic dense correlation-like base: A[i][j] = 0.5^|i - j|.
SpdMatrix synthetic_spd_base(std::size_t dim = kDefaultSpdDim);

/// Sample quantile with linear interpolation between order statistics
/// (the "type 7" definition).
double quantile(std::vector<double> values, double prob);

struct PerturbedSpd {
  SpdMatrix matrix;
  bool jittered = false;
};

using ScalarSampler = std::function<double(Rng&)>;

/// (L + scale * q * W)(L + scale * q * W)^T where W has `sparsity` nonzero
/// lower-triangular entries at fresh uniformly drawn positions, with values
/// from `v_sampler`. Adds kJitter * I when the product is numerically singular.
PerturbedSpd perturbed_spd(const SpdScenario& scenario, double scale, const ScalarSampler& v_sampler, Rng& rng);

// ---------------------------------------------------------------------------
// Elliptic Fourier outlines
// ---------------------------------------------------------------------------

struct EfaCoefficients {
  double a0 = 0.0;
  double c0 = 0.0;
  /// (a_i, b_i, c_i, d_i) for harmonics i = 1..N.
  std::vector<std::array<double, 4>> harmonics;
  double period = 1.0;

  std::size_t order() const { return harmonics.size(); }
};

/// Closed-form elliptic Fourier coefficients of the closed polygon through
/// the outline's landmarks, parametrized by chord length.
EfaCoefficients efa_coefficients(const ShapeObject& outline, std::size_t harmonics = kDefaultHarmonics);

/// Point on the Fourier outline at parameter t in [0, period).
Eigen::Vector2d efa_evaluate(const EfaCoefficients& coef, double t);

/// m landmarks at t = j * period / m, j = 0..m-1.
Eigen::MatrixX2d efa_reconstruct(const EfaCoefficients& coef, std::size_t m = kDefaultLandmarks);

/// Chord-length parameter of each landmark of `outline` (first is 0).
std::vector<double> chord_parameters(const ShapeObject& outline);

/// Multiplies harmonic i's coefficients elementwise by perturbations[i],
/// reconstructs m landmarks and maps them through Q * U^T with
/// U = scale * [[cos, -sin], [sin, cos]](theta).
Eigen::MatrixX2d shape_from_perturbations(const EfaCoefficients& coef,
                                          const std::vector<std::array<double, 4>>& perturbations,
                                          std::size_t m, double scale, double theta);

/// Draws the perturbation quadruple for harmonic `harmonic` (1-based).
using PerturbationSampler = std::function<std::array<double, 4>(std::size_t harmonic, Rng&)>;

/// Random shape: perturbed harmonics, then theta ~ U(0, 2 pi), s ~ U(0, 20).
/// Degenerate draws are redrawn up to 100 times.
ShapeObject random_shape(const EfaCoefficients& coef, const PerturbationSampler& sampler, std::size_t m, Rng& rng);

/// Perturbations drawn U[lo, hi] for harmonic 1 and U[0.8, 1.2] otherwise.
PerturbationSampler first_harmonic_sampler(double lo, double hi);

/// 50-landmark closed outline shaped like a kidney bean.
ShapeObject synthetic_outline(std::size_t m = kDefaultLandmarks);

// ---------------------------------------------------------------------------
// Scenario families
// ---------------------------------------------------------------------------

struct ScenarioConfig {
  std::size_t spd_dim = kDefaultSpdDim;
  std::size_t harmonics = kDefaultHarmonics;
  std::size_t landmarks = kDefaultLandmarks;
  std::size_t sparsity = kDefaultSparsity;
};

/// One generated dataset. Homogeneity scenarios produce a single pooled
/// component of 2n objects (first n in group 0); independence scenarios
/// produce n observations of (X, Y, Z) as three components.
struct Dataset {
  std::string scenario;
  double kappa = 0.0;
  std::size_t n = 0;
  std::vector<ObjectList> components;
  std::vector<MetricKind> metrics;
  std::vector<std::uint8_t> groups;
  std::size_t jittered = 0;

  bool is_two_sample() const { return !groups.empty(); }
};

class ScenarioLibrary {
 public:
  explicit ScenarioLibrary(ScenarioConfig config = {});

  static const std::vector<std::string>& names();
  static bool is_homogeneity(std::string_view name);

  /// name is one of spd-hom, shape-hom, spd-ind, shape-ind.
  Dataset generate(std::string_view name, double kappa, std::size_t n, Rng& rng) const;

  const ScenarioConfig& config() const { return config_; }
  const SpdScenario& spd() const { return spd_; }
  const EfaCoefficients& outline() const { return outline_; }
  /// FNV-1a over the base SPD matrix and the base outline landmarks.
  std::uint64_t base_checksum() const { return checksum_; }

 private:
  Dataset spd_hom(double kappa, std::size_t n, Rng& rng) const;
  Dataset shape_hom(double kappa, std::size_t n, Rng& rng) const;
  Dataset spd_ind(double kappa, std::size_t n, Rng& rng) const;
  Dataset shape_ind(double kappa, std::size_t n, Rng& rng) const;

  ScenarioConfig config_;
  SpdScenario spd_;
  ShapeObject base_outline_;
  EfaCoefficients outline_;
  std::uint64_t checksum_ = 0;
};

}  // namespace mdf
