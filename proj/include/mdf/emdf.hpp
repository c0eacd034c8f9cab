#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "mdf/metrics.hpp"
#include "mdf/ranks.hpp"

namespace mdf {

/// K distance matrices over one shared index set: a sample from a product
/// metric space, seen only through its pairwise component distances.
class MultiDistance {
 public:
  MultiDistance() = default;
  explicit MultiDistance(std::vector<DistanceMatrix> components, std::vector<std::string> labels = {});

  std::size_t size() const { return components_.empty() ? 0 : components_.front().size(); }
  std::size_t component_count() const { return components_.size(); }
  const DistanceMatrix& component(std::size_t k) const { return components_[k]; }
  const std::vector<DistanceMatrix>& components() const { return components_; }
  const std::vector<std::string>& labels() const { return labels_; }

  /// Dense within-row ranks of every component.
  std::vector<RankMatrix> ranks() const;

 private:
  std::vector<DistanceMatrix> components_;
  std::vector<std::string> labels_;
};

/// n x n matrix of EMDF values F[i][j] = F_n(X_i, X_j).
class EmdfMatrix {
 public:
  EmdfMatrix() = default;
  EmdfMatrix(std::size_t n, std::vector<double> values);

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return f_[i * n_ + j]; }
  std::span<const double> row(std::size_t i) const { return {f_.data() + i * n_, n_}; }
  const std::vector<double>& data() const { return f_; }

  bool operator==(const EmdfMatrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> f_;
};

/// Ball counts C[i][j] = #{ l : rank_k(i, l) <= rank_k(i, j) for all k }.
/// Rows are independent and distributed across `workers`.
std::vector<std::uint32_t> ball_counts(std::span<const RankMatrix> ranks, std::size_t workers = 1);

/// F[i][j] = (1/n) #{ l : D_k[i][l] <= D_k[i][j] for every component k }.
EmdfMatrix emdf_matrix(const MultiDistance& md, std::size_t workers = 1);

/// EMDF of a sample evaluated at an arbitrary centre:
/// (1/n) #{ l : center_dists[k][l] <= radii[k] for every k }.
double emdf_eval(std::span<const std::vector<double>> center_dists, std::span<const double> radii);

/// Population MDF of a law on the real line: (centre, radius) -> probability.
using AnalyticMdf = std::function<double(double center, double radius)>;

/// max over sample pairs (i, j) of |F_n(X_i, X_j) - F(X_i, X_j)| on the real
/// line with the absolute-difference metric.
double gc_deviation(std::span<const double> sample, const AnalyticMdf& analytic_mdf);

/// MDF of Uniform(0, 1): min(u + r, 1) - max(u - r, 0).
double uniform_unit_mdf(double center, double radius);

}  // namespace mdf
