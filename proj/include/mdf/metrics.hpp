#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mdf/parallel.hpp"

namespace mdf {

/// Symmetric positive definite matrix. Validated on construction; the
/// lower Cholesky factor is computed once and kept for the distance routines.
class SpdMatrix {
 public:
  explicit SpdMatrix(Eigen::MatrixXd entries);

  Eigen::Index dim() const { return entries_.rows(); }
  const Eigen::MatrixXd& entries() const { return entries_; }
  /// Lower triangular with strictly positive diagonal, L * L^T == entries().
  const Eigen::MatrixXd& cholesky_factor() const { return factor_; }

  static constexpr double kSymmetryTolerance = 1e-10;

 private:
  Eigen::MatrixXd entries_;
  Eigen::MatrixXd factor_;
};

/// Ordered landmarks on a closed planar outline, one row per landmark.
class ShapeObject {
 public:
  explicit ShapeObject(Eigen::MatrixX2d landmarks);

  Eigen::Index size() const { return landmarks_.rows(); }
  const Eigen::MatrixX2d& landmarks() const { return landmarks_; }

  /// Centered at the landmark mean and scaled to unit Frobenius norm.
  Eigen::MatrixX2d preshape() const;

 private:
  Eigen::MatrixX2d landmarks_;
};

/// Curve sampled on a strictly increasing grid.
class FunctionalCurve {
 public:
  FunctionalCurve(std::vector<double> grid, std::vector<double> values);

  const std::vector<double>& grid() const { return grid_; }
  const std::vector<double>& values() const { return values_; }

 private:
  std::vector<double> grid_;
  std::vector<double> values_;
};

/// Symmetric n x n matrix of pairwise distances with zero diagonal.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  /// Validates row-major `entries`; the error message names the first
  /// offending entry or pair.
  DistanceMatrix(std::size_t n, std::vector<double> entries);

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }
  std::span<const double> row(std::size_t i) const { return {d_.data() + i * n_, n_}; }
  const std::vector<double>& data() const { return d_; }

  /// Applies `perm` to the index set: result(i, j) = (*this)(perm[i], perm[j]).
  DistanceMatrix permuted(std::span<const std::size_t> perm) const;

  bool operator==(const DistanceMatrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> d_;
};

/// Raised by pairwise_matrix when the metric fails on a particular pair.
class PairError : public std::runtime_error {
 public:
  PairError(std::size_t i, std::size_t j, const std::string& what);
  std::size_t first() const { return i_; }
  std::size_t second() const { return j_; }

 private:
  std::size_t i_;
  std::size_t j_;
};

double lp_distance(const Eigen::VectorXd& x, const Eigen::VectorXd& y, double p);
double cholesky_distance(const SpdMatrix& p1, const SpdMatrix& p2);
double air_distance(const SpdMatrix& p1, const SpdMatrix& p2);
/// Result lies in [0, pi/2]; invariant to similarity transforms and reflection.
double riemannian_shape_distance(const ShapeObject& s1, const ShapeObject& s2);
double sphere_geodesic(const Eigen::VectorXd& x, const Eigen::VectorXd& y);
double l2_distance(const FunctionalCurve& f, const FunctionalCurve& g);
/// l_p norm of a vector of component distances.
double product_distance(std::span<const double> components, double p);

/// Combines K component matrices into the single product metric
/// d(u, v) = || (d_1(u_1, v_1), ..., d_K(u_K, v_K)) ||_p.
DistanceMatrix product_matrix(std::span<const DistanceMatrix> components, double p);

/// Pairwise distances over `objects`. Only the lower triangle is evaluated;
/// rows are distributed across `workers` and the result does not depend on
/// the worker count.
template <class Object, class Metric>
DistanceMatrix pairwise_matrix(std::span<const Object> objects, const Metric& metric,
                               std::size_t workers = 1) {
  const std::size_t n = objects.size();
  if (n == 0) throw std::invalid_argument("pairwise_matrix: empty object list");
  std::vector<double> d(n * n, 0.0);
  parallel_for(n, workers, [&](std::size_t i) {
    for (std::size_t j = 0; j < i; ++j) {
      double value;
      try {
        value = metric(objects[i], objects[j]);
      } catch (const std::exception& e) {
        throw PairError(i, j, e.what());
      }
      d[i * n + j] = value;
      d[j * n + i] = value;
    }
  });
  return DistanceMatrix(n, std::move(d));
}

}  // namespace mdf
