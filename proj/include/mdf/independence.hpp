#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mdf/emdf.hpp"
#include "mdf/permutation.hpp"

namespace mdf {

/// Shared state for evaluating the metric association statistic under
/// arbitrary relabelings of components 2..K.
///
/// Marginal ball counts are computed once. Relabeling component k by a
/// permutation p turns its marginal EMDF into F_k[p(i)][p(j)] and its rows of
/// ranks into rank_k(p(i), p(l)), so no replicate re-sorts anything; only the
/// joint counts are recomputed.
class MaEngine {
 public:
  explicit MaEngine(const MultiDistance& md);

  std::size_t size() const { return n_; }
  std::size_t component_count() const { return ranks_.size(); }

  double statistic() const;
  /// `perms` holds one permutation for each of components 2..K; component 1
  /// stays fixed.
  double statistic(const Arrangement& perms) const;

 private:
  std::size_t n_;
  std::vector<RankMatrix> ranks_;
  std::vector<std::vector<std::uint32_t>> marginal_counts_;
};

/// (1/n^2) sum_{i,j} (F_joint[i][j] - prod_k F_k[i][j])^2, K >= 2.
double ma_statistic(const MultiDistance& md);

/// Fixes component 1 and independently permutes the index sets of
/// components 2..K in every replicate. Requires n >= 3.
TestResult ma_test(const MultiDistance& md, const PermutationOptions& options);

}  // namespace mdf
