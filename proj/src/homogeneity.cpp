#include "mdf/homogeneity.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <stdexcept>

namespace mdf {

namespace {

std::vector<std::uint8_t> leading_groups(std::size_t n, std::size_t n1) {
  if (n1 > n) throw std::invalid_argument("TwoSampleLayout: n1 exceeds pooled size");
  std::vector<std::uint8_t> groups(n, 1);
  std::fill_n(groups.begin(), n1, 0);
  return groups;
}

}  // namespace

TwoSampleLayout::TwoSampleLayout(MultiDistance pooled, std::size_t n1)
    : pooled_(std::move(pooled)), groups_(leading_groups(pooled_.size(), n1)) {
  validate();
}

TwoSampleLayout::TwoSampleLayout(MultiDistance pooled, std::vector<std::uint8_t> groups)
    : pooled_(std::move(pooled)), groups_(std::move(groups)) {
  validate();
}

void TwoSampleLayout::validate() {
  if (groups_.size() != pooled_.size())
    throw std::invalid_argument("TwoSampleLayout: group marks differ from pooled size");
  for (const auto g : groups_) {
    if (g > 1) throw std::invalid_argument("TwoSampleLayout: group marks must be 0 or 1");
    (g == 0 ? n1_ : n2_) += 1;
  }
  if (n1_ < 2 || n2_ < 2) throw std::invalid_argument("TwoSampleLayout: each group needs at least 2 objects");
}

MksEngine::MksEngine(const MultiDistance& pooled) : n_(pooled.size()), ranks_(pooled.ranks()) {}

std::array<double, 2> MksEngine::directed(std::span<const std::uint8_t> groups) const {
  if (groups.size() != n_) throw std::invalid_argument("MKS: group marks differ from pooled size");
  std::array<std::int64_t, 2> group_size{0, 0};
  for (const auto g : groups) {
    if (g > 1) throw std::invalid_argument("MKS: group marks must be 0 or 1");
    ++group_size[g];
  }
  if (group_size[0] < 1 || group_size[1] < 1) throw std::invalid_argument("MKS: each group needs a member");
  const std::int64_t n1 = group_size[0];
  const std::int64_t n2 = group_size[1];

  const std::size_t k_count = ranks_.size();
  DominanceCounter counter(n_, k_count, 2);
  std::vector<std::uint32_t> counts(n_ * 2);
  std::vector<std::span<const std::uint32_t>> rows(k_count);
  std::array<std::int64_t, 2> gap_sum{0, 0};

  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t k = 0; k < k_count; ++k) rows[k] = ranks_[k].row(i);
    counter.count(rows, groups, counts);
    std::int64_t widest = 0;
    for (std::size_t v = 0; v < n_; ++v) {
      const std::int64_t c1 = counts[2 * v];
      const std::int64_t c2 = counts[2 * v + 1];
      widest = std::max(widest, std::abs(c1 * n2 - c2 * n1));
    }
    gap_sum[groups[i]] += widest;
  }

  const double scale = static_cast<double>(n1) * static_cast<double>(n2);
  return {static_cast<double>(gap_sum[0]) / (static_cast<double>(n1) * scale),
          static_cast<double>(gap_sum[1]) / (static_cast<double>(n2) * scale)};
}

double MksEngine::statistic(std::span<const std::uint8_t> groups) const {
  const auto d = directed(groups);
  return d[0] + d[1];
}

double mks_directed(const TwoSampleLayout& layout, std::size_t direction) {
  if (direction > 1) throw std::invalid_argument("mks_directed: direction must be 0 or 1");
  return MksEngine(layout.pooled()).directed(layout.groups())[direction];
}

double mks_statistic(const TwoSampleLayout& layout) {
  return MksEngine(layout.pooled()).statistic(layout.groups());
}

TestResult mks_test(const TwoSampleLayout& layout, const PermutationOptions& options) {
  const MksEngine engine(layout.pooled());
  const auto& groups = layout.groups();
  const std::size_t n = groups.size();

  const StatisticFn stat = [&](const Arrangement& arrangement) {
    const auto& perm = arrangement.front();
    std::vector<std::uint8_t> relabeled(n);
    for (std::size_t l = 0; l < n; ++l) relabeled[l] = groups[perm[l]];
    return engine.statistic(relabeled);
  };
  const ResampleFn resample = [n](Rng& rng) { return Arrangement{random_permutation(n, rng)}; };

  Arrangement identity{std::vector<std::size_t>(n)};
  std::iota(identity[0].begin(), identity[0].end(), std::size_t{0});
  return run_permutation_test(stat, resample, identity, options);
}

}  // namespace mdf
