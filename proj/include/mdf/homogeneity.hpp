#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mdf/emdf.hpp"
#include "mdf/permutation.hpp"

namespace mdf {

/// Pooled two-sample data: distances over all n1 + n2 objects plus a group
/// mark (0 for the first sample, 1 for the second) per object.
class TwoSampleLayout {
 public:
  /// The first n1 objects form group 0, the rest group 1.
  TwoSampleLayout(MultiDistance pooled, std::size_t n1);
  TwoSampleLayout(MultiDistance pooled, std::vector<std::uint8_t> groups);

  const MultiDistance& pooled() const { return pooled_; }
  const std::vector<std::uint8_t>& groups() const { return groups_; }
  std::size_t n1() const { return n1_; }
  std::size_t n2() const { return n2_; }

 private:
  void validate();

  MultiDistance pooled_;
  std::vector<std::uint8_t> groups_;
  std::size_t n1_ = 0;
  std::size_t n2_ = 0;
};

/// Precomputed ranks of the pooled distances, so that any relabeling of the
/// pooled sample can be scored without touching the distances again.
///
/// For each centre, the largest |F1 - F2| gap over radii through every pooled
/// point is held as the integer |c1 * n2 - c2 * n1|; the directed values are
/// exact integer sums divided once at the end.
class MksEngine {
 public:
  explicit MksEngine(const MultiDistance& pooled);

  std::size_t size() const { return n_; }

  /// {MKS(mu1 || mu2), MKS(mu2 || mu1)} for the given group marks.
  std::array<double, 2> directed(std::span<const std::uint8_t> groups) const;
  double statistic(std::span<const std::uint8_t> groups) const;

 private:
  std::size_t n_;
  std::vector<RankMatrix> ranks_;
};

/// direction 0 averages over centres from group 0, direction 1 over group 1.
double mks_directed(const TwoSampleLayout& layout, std::size_t direction);
double mks_statistic(const TwoSampleLayout& layout);

/// Label-permutation test: each replicate re-partitions the pooled indices
/// uniformly into groups of sizes n1 and n2.
TestResult mks_test(const TwoSampleLayout& layout, const PermutationOptions& options);

}  // namespace mdf
