#include "mdf/metrics.hpp"

#include <cmath>
#include <sstream>

namespace mdf {

namespace {

void require_same_dim(const SpdMatrix& a, const SpdMatrix& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("SPD dimension mismatch");
}

}  // namespace

SpdMatrix::SpdMatrix(Eigen::MatrixXd entries) : entries_(std::move(entries)) {
  if (entries_.rows() == 0 || entries_.rows() != entries_.cols())
    throw std::invalid_argument("SpdMatrix: matrix must be square and non-empty");
  if (!entries_.allFinite()) throw std::invalid_argument("SpdMatrix: non-finite entry");
  const double asym = (entries_ - entries_.transpose()).cwiseAbs().maxCoeff();
  if (asym > kSymmetryTolerance) {
    std::ostringstream msg;
    msg << "SpdMatrix: not symmetric (max asymmetry " << asym << ")";
    throw std::invalid_argument(msg.str());
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(entries_, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success || eig.eigenvalues().minCoeff() <= 0.0)
    throw std::invalid_argument("SpdMatrix: matrix is not positive definite");
  Eigen::LLT<Eigen::MatrixXd> llt(entries_);
  if (llt.info() != Eigen::Success)
    throw std::invalid_argument("SpdMatrix: Cholesky factorization failed");
  factor_ = llt.matrixL();
}

ShapeObject::ShapeObject(Eigen::MatrixX2d landmarks) : landmarks_(std::move(landmarks)) {
  if (landmarks_.rows() < 3) throw std::invalid_argument("ShapeObject: need at least 3 landmarks");
  if (!landmarks_.allFinite()) throw std::invalid_argument("ShapeObject: non-finite landmark");
  const Eigen::RowVector2d mean = landmarks_.colwise().mean();
  if ((landmarks_.rowwise() - mean).norm() == 0.0)
    throw std::invalid_argument("ShapeObject: degenerate shape (all landmarks coincide)");
}

Eigen::MatrixX2d ShapeObject::preshape() const {
  const Eigen::RowVector2d mean = landmarks_.colwise().mean();
  Eigen::MatrixX2d centered = landmarks_.rowwise() - mean;
  centered /= centered.norm();
  return centered;
}

FunctionalCurve::FunctionalCurve(std::vector<double> grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (grid_.size() != values_.size())
    throw std::invalid_argument("FunctionalCurve: grid and values differ in length");
  if (grid_.empty()) throw std::invalid_argument("FunctionalCurve: empty curve");
  for (std::size_t i = 1; i < grid_.size(); ++i)
    if (!(grid_[i] > grid_[i - 1]))
      throw std::invalid_argument("FunctionalCurve: grid must be strictly increasing");
}

DistanceMatrix::DistanceMatrix(std::size_t n, std::vector<double> entries)
    : n_(n), d_(std::move(entries)) {
  if (n_ == 0) throw std::invalid_argument("DistanceMatrix: n must be positive");
  if (d_.size() != n_ * n_) throw std::invalid_argument("DistanceMatrix: expected n*n entries");
  for (std::size_t i = 0; i < n_; ++i) {
    if (d_[i * n_ + i] != 0.0) {
      std::ostringstream msg;
      msg << "DistanceMatrix: nonzero diagonal at (" << i << ", " << i << ")";
      throw std::invalid_argument(msg.str());
    }
    for (std::size_t j = 0; j < i; ++j) {
      const double a = d_[i * n_ + j];
      const double b = d_[j * n_ + i];
      if (!std::isfinite(a) || !std::isfinite(b) || a < 0.0 || b < 0.0) {
        std::ostringstream msg;
        msg << "DistanceMatrix: invalid entry at pair (" << i << ", " << j << ")";
        throw std::invalid_argument(msg.str());
      }
      if (a != b) {
        std::ostringstream msg;
        msg << "DistanceMatrix: asymmetric pair (" << i << ", " << j << "): " << a << " vs " << b;
        throw std::invalid_argument(msg.str());
      }
    }
  }
}

DistanceMatrix DistanceMatrix::permuted(std::span<const std::size_t> perm) const {
  if (perm.size() != n_) throw std::invalid_argument("DistanceMatrix::permuted: size mismatch");
  std::vector<double> out(n_ * n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) out[i * n_ + j] = d_[perm[i] * n_ + perm[j]];
  return DistanceMatrix(n_, std::move(out));
}

PairError::PairError(std::size_t i, std::size_t j, const std::string& what)
    : std::runtime_error("metric failed on pair (" + std::to_string(i) + ", " + std::to_string(j) +
                         "): " + what),
      i_(i),
      j_(j) {}

double lp_distance(const Eigen::VectorXd& x, const Eigen::VectorXd& y, double p) {
  if (x.size() != y.size()) throw std::invalid_argument("lp_distance: length mismatch");
  if (!(p >= 1.0)) throw std::invalid_argument("lp_distance: p must be >= 1");
  const Eigen::ArrayXd diff = (x - y).array().abs();
  if (diff.size() == 0) return 0.0;
  if (std::isinf(p)) return diff.maxCoeff();
  if (p == 1.0) return diff.sum();
  if (p == 2.0) return std::sqrt(diff.square().sum());
  return std::pow(diff.pow(p).sum(), 1.0 / p);
}

double cholesky_distance(const SpdMatrix& p1, const SpdMatrix& p2) {
  require_same_dim(p1, p2);
  return (p1.cholesky_factor() - p2.cholesky_factor()).norm();
}

double air_distance(const SpdMatrix& p1, const SpdMatrix& p2) {
  require_same_dim(p1, p2);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> base(p1.entries());
  const Eigen::VectorXd inv_sqrt = base.eigenvalues().array().rsqrt();
  const Eigen::MatrixXd w = base.eigenvectors() * inv_sqrt.asDiagonal() * base.eigenvectors().transpose();
  Eigen::MatrixXd m = w * p2.entries() * w;
  m = 0.5 * (m + m.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> rel(m, Eigen::EigenvaluesOnly);
  const Eigen::ArrayXd lambda = rel.eigenvalues().array();
  if (lambda.minCoeff() <= 0.0) throw std::runtime_error("air_distance: lost positive definiteness");
  return std::sqrt(lambda.log().square().sum());
}

double riemannian_shape_distance(const ShapeObject& s1, const ShapeObject& s2) {
  if (s1.size() != s2.size()) throw std::invalid_argument("shape distance: landmark count mismatch");
  const Eigen::MatrixX2d h1 = s1.preshape();
  const Eigen::MatrixX2d h2 = s2.preshape();
  const Eigen::Matrix2d cross = h2.transpose() * h1;
  // R = V U^T attains the sup over O(2) of Tr(cross * R), the nuclear norm
  // of cross. The angle is read off the aligned chord rather than through
  // acos, which loses half the digits near zero.
  Eigen::JacobiSVD<Eigen::Matrix2d> svd(cross, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::MatrixX2d aligned = h1 * (svd.matrixV() * svd.matrixU().transpose());
  return 2.0 * std::atan2((aligned - h2).norm(), (aligned + h2).norm());
}

double sphere_geodesic(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  if (x.size() != y.size()) throw std::invalid_argument("sphere_geodesic: length mismatch");
  constexpr double tol = 1e-8;
  if (std::abs(x.norm() - 1.0) > tol || std::abs(y.norm() - 1.0) > tol)
    throw std::invalid_argument("sphere_geodesic: inputs must be unit vectors");
  return 2.0 * std::atan2((x - y).norm(), (x + y).norm());
}

double l2_distance(const FunctionalCurve& f, const FunctionalCurve& g) {
  if (f.grid() != g.grid()) throw std::invalid_argument("l2_distance: grids differ");
  const auto& t = f.grid();
  double integral = 0.0;
  for (std::size_t i = 1; i < t.size(); ++i) {
    const double a = f.values()[i - 1] - g.values()[i - 1];
    const double b = f.values()[i] - g.values()[i];
    integral += 0.5 * (t[i] - t[i - 1]) * (a * a + b * b);
  }
  return std::sqrt(integral);
}

double product_distance(std::span<const double> components, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("product_distance: p must be >= 1");
  Eigen::VectorXd e(static_cast<Eigen::Index>(components.size()));
  for (std::size_t k = 0; k < components.size(); ++k) {
    if (!(components[k] >= 0.0)) throw std::invalid_argument("product_distance: negative component");
    e(static_cast<Eigen::Index>(k)) = components[k];
  }
  return lp_distance(e, Eigen::VectorXd::Zero(e.size()), p);
}

DistanceMatrix product_matrix(std::span<const DistanceMatrix> components, double p) {
  if (components.empty()) throw std::invalid_argument("product_matrix: no components");
  const std::size_t n = components.front().size();
  for (const auto& c : components)
    if (c.size() != n) throw std::invalid_argument("product_matrix: components differ in n");
  std::vector<double> out(n * n, 0.0);
  std::vector<double> e(components.size());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) {
      for (std::size_t k = 0; k < components.size(); ++k) e[k] = components[k](i, j);
      out[i * n + j] = out[j * n + i] = product_distance(e, p);
    }
  return DistanceMatrix(n, std::move(out));
}

}  // namespace mdf
