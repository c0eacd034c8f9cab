#include "mdf/independence.hpp"

#include <numeric>
#include <span>
#include <stdexcept>

namespace mdf {

MaEngine::MaEngine(const MultiDistance& md) : n_(md.size()), ranks_(md.ranks()) {
  if (ranks_.size() < 2) throw std::invalid_argument("MA statistic needs at least two components");
  marginal_counts_.reserve(ranks_.size());
  for (const auto& r : ranks_) marginal_counts_.push_back(ball_counts(std::span(&r, 1)));
}

double MaEngine::statistic() const {
  Arrangement identity(ranks_.size() - 1, std::vector<std::size_t>(n_));
  for (auto& p : identity) std::iota(p.begin(), p.end(), std::size_t{0});
  return statistic(identity);
}

double MaEngine::statistic(const Arrangement& perms) const {
  const std::size_t n = n_;
  const std::size_t k_count = ranks_.size();
  if (perms.size() != k_count - 1) throw std::invalid_argument("MA: need one permutation per component 2..K");
  for (const auto& p : perms)
    if (p.size() != n) throw std::invalid_argument("MA: permutation length differs from sample size");

  DominanceCounter counter(n, k_count, 1);
  std::vector<std::vector<std::uint32_t>> permuted_rows(k_count - 1, std::vector<std::uint32_t>(n));
  std::vector<std::span<const std::uint32_t>> rows(k_count);
  std::vector<std::uint32_t> joint(n);
  const double denom = static_cast<double>(n);

  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    rows[0] = ranks_[0].row(i);
    for (std::size_t k = 1; k < k_count; ++k) {
      const auto& p = perms[k - 1];
      const auto source = ranks_[k].row(p[i]);
      auto& dest = permuted_rows[k - 1];
      for (std::size_t l = 0; l < n; ++l) dest[l] = source[p[l]];
      rows[k] = dest;
    }
    counter.count(rows, {}, joint);

    for (std::size_t j = 0; j < n; ++j) {
      double product = static_cast<double>(marginal_counts_[0][i * n + j]) / denom;
      for (std::size_t k = 1; k < k_count; ++k) {
        const auto& p = perms[k - 1];
        product *= static_cast<double>(marginal_counts_[k][p[i] * n + p[j]]) / denom;
      }
      const double diff = static_cast<double>(joint[j]) / denom - product;
      sum += diff * diff;
    }
  }
  return sum / (denom * denom);
}

double ma_statistic(const MultiDistance& md) { return MaEngine(md).statistic(); }

TestResult ma_test(const MultiDistance& md, const PermutationOptions& options) {
  if (md.size() < 3) throw std::invalid_argument("MA test needs n >= 3");
  const MaEngine engine(md);
  const std::size_t n = md.size();
  const std::size_t permuted = md.component_count() - 1;

  const StatisticFn stat = [&](const Arrangement& a) { return engine.statistic(a); };
  const ResampleFn resample = [n, permuted](Rng& rng) {
    Arrangement a;
    a.reserve(permuted);
    for (std::size_t k = 0; k < permuted; ++k) a.push_back(random_permutation(n, rng));
    return a;
  };

  Arrangement identity(permuted, std::vector<std::size_t>(n));
  for (auto& p : identity) std::iota(p.begin(), p.end(), std::size_t{0});
  return run_permutation_test(stat, resample, identity, options);
}

}  // namespace mdf
