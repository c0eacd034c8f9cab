#include "mdf/emdf.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mdf {

MultiDistance::MultiDistance(std::vector<DistanceMatrix> components, std::vector<std::string> labels)
    : components_(std::move(components)), labels_(std::move(labels)) {
  if (components_.empty()) throw std::invalid_argument("MultiDistance: need at least one component");
  const std::size_t n = components_.front().size();
  for (const auto& c : components_)
    if (c.size() != n) throw std::invalid_argument("MultiDistance: components differ in sample size");
  if (!labels_.empty() && labels_.size() != n)
    throw std::invalid_argument("MultiDistance: label count differs from sample size");
}

std::vector<RankMatrix> MultiDistance::ranks() const {
  std::vector<RankMatrix> out;
  out.reserve(components_.size());
  for (const auto& c : components_) out.emplace_back(c);
  return out;
}

EmdfMatrix::EmdfMatrix(std::size_t n, std::vector<double> values) : n_(n), f_(std::move(values)) {
  if (f_.size() != n_ * n_) throw std::invalid_argument("EmdfMatrix: expected n*n values");
}

std::vector<std::uint32_t> ball_counts(std::span<const RankMatrix> ranks, std::size_t workers) {
  if (ranks.empty()) throw std::invalid_argument("ball_counts: no components");
  const std::size_t n = ranks.front().size();
  const std::size_t k_count = ranks.size();
  std::vector<std::uint32_t> counts(n * n);

  // One counter per contiguous block of rows keeps scratch reuse high.
  const std::size_t blocks = std::min(n, std::max<std::size_t>(1, workers) * 4);
  parallel_for(blocks, workers, [&](std::size_t b) {
    DominanceCounter counter(n, k_count, 1);
    std::vector<std::span<const std::uint32_t>> rows(k_count);
    for (std::size_t i = b * n / blocks; i < (b + 1) * n / blocks; ++i) {
      for (std::size_t k = 0; k < k_count; ++k) rows[k] = ranks[k].row(i);
      counter.count(rows, {}, std::span(counts).subspan(i * n, n));
    }
  });
  return counts;
}

EmdfMatrix emdf_matrix(const MultiDistance& md, std::size_t workers) {
  const std::size_t n = md.size();
  const auto ranks = md.ranks();
  const auto counts = ball_counts(ranks, workers);
  std::vector<double> f(n * n);
  const double denom = static_cast<double>(n);
  for (std::size_t idx = 0; idx < n * n; ++idx) f[idx] = static_cast<double>(counts[idx]) / denom;
  return EmdfMatrix(n, std::move(f));
}

double emdf_eval(std::span<const std::vector<double>> center_dists, std::span<const double> radii) {
  if (center_dists.empty() || center_dists.size() != radii.size())
    throw std::invalid_argument("emdf_eval: need one radius per component");
  const std::size_t n = center_dists.front().size();
  for (const auto& d : center_dists)
    if (d.size() != n) throw std::invalid_argument("emdf_eval: component lengths differ");
  for (const double r : radii)
    if (!(r >= 0.0)) throw std::invalid_argument("emdf_eval: radii must be nonnegative");
  if (n == 0) throw std::invalid_argument("emdf_eval: empty sample");

  std::size_t inside = 0;
  for (std::size_t l = 0; l < n; ++l) {
    bool all = true;
    for (std::size_t k = 0; k < center_dists.size() && all; ++k) all = center_dists[k][l] <= radii[k];
    inside += all ? 1 : 0;
  }
  return static_cast<double>(inside) / static_cast<double>(n);
}

double gc_deviation(std::span<const double> sample, const AnalyticMdf& analytic_mdf) {
  const std::size_t n = sample.size();
  if (n == 0) throw std::invalid_argument("gc_deviation: empty sample");
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d[i * n + j] = std::abs(sample[i] - sample[j]);
  const MultiDistance md({DistanceMatrix(n, d)});
  const EmdfMatrix f = emdf_matrix(md);

  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      worst = std::max(worst, std::abs(f(i, j) - analytic_mdf(sample[i], d[i * n + j])));
  return worst;
}

double uniform_unit_mdf(double center, double radius) {
  return std::min(center + radius, 1.0) - std::max(center - radius, 0.0);
}

}  // namespace mdf
