#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mdf/metrics.hpp"

namespace mdf {

/// Within-row dense ranks of a distance matrix.
///
/// rank(i, l) <= rank(i, j) exactly when d(i, l) <= d(i, j), so every
/// closed-ball membership test can be answered on integers. Ranks are
/// unchanged by any strictly increasing transform of the distances.
class RankMatrix {
 public:
  RankMatrix() = default;
  explicit RankMatrix(const DistanceMatrix& d);

  std::size_t size() const { return n_; }
  std::uint32_t operator()(std::size_t i, std::size_t l) const { return r_[i * n_ + l]; }
  std::span<const std::uint32_t> row(std::size_t i) const { return {r_.data() + i * n_, n_}; }

 private:
  std::size_t n_ = 0;
  std::vector<std::uint32_t> r_;
};

/// Closed product-ball counting for a single centre.
///
/// Given, for one centre, the rank of every sample point in each of K
/// components and a group mark per point, fills
///   counts[v * groups + g] = #{ l : group[l] == g and rank_k[l] <= rank_k[v] for all k }.
/// K = 1 uses a rank histogram (O(n)); K = 2 sweeps the first component's
/// rank buckets with one Fenwick tree per group (O(n log n)); K >= 3 intersects
/// per-component prefix bitsets (O(K n^2 / 64)). The object owns its scratch
/// buffers and is meant to be reused across rows by a single thread.
class DominanceCounter {
 public:
  DominanceCounter(std::size_t n, std::size_t components, std::size_t groups);

  std::size_t size() const { return n_; }
  std::size_t groups() const { return groups_; }

  /// `group` may be empty, meaning every point is in group 0.
  void count(std::span<const std::span<const std::uint32_t>> ranks,
             std::span<const std::uint8_t> group, std::span<std::uint32_t> counts);

 private:
  void count_one(std::span<const std::uint32_t> rank, std::span<const std::uint8_t> group,
                 std::span<std::uint32_t> counts);
  void count_two(std::span<const std::uint32_t> first, std::span<const std::uint32_t> second,
                 std::span<const std::uint8_t> group, std::span<std::uint32_t> counts);
  void count_many(std::span<const std::span<const std::uint32_t>> ranks,
                  std::span<const std::uint8_t> group, std::span<std::uint32_t> counts);

  std::size_t n_;
  std::size_t components_;
  std::size_t groups_;
  std::vector<std::uint32_t> hist_;
  std::vector<std::uint32_t> bucket_start_;
  std::vector<std::uint32_t> cursor_;
  std::vector<std::uint32_t> order_;
  std::vector<std::uint32_t> fenwick_;
  std::vector<std::uint64_t> prefix_bits_;
  std::vector<std::uint64_t> group_masks_;
  std::vector<std::uint64_t> scratch_bits_;
};

}  // namespace mdf
