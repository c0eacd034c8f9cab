#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "mdf/parallel.hpp"
#include "mdf/rng.hpp"

namespace mdf {

inline constexpr std::size_t kDefaultPermutations = 399;
inline constexpr std::size_t kDefaultMonteCarloRuns = 500;
inline constexpr double kDefaultAlpha = 0.05;

struct TestResult {
  double statistic = 0.0;
  double p_value = 1.0;
  std::size_t replications = 0;
  std::uint64_t seed = 0;
  std::vector<double> null_stats;

  bool rejects(double alpha) const { return p_value <= alpha; }
};

/// (1 + #{b : null_stats[b] >= observed}) / (B + 1).
double permutation_pvalue(double observed, std::span<const double> null_stats);

/// One permutation per permuted index set; what each permutation means is up
/// to the statistic (a label shuffle, a component relabeling, ...).
using Arrangement = std::vector<std::vector<std::size_t>>;
using StatisticFn = std::function<double(const Arrangement&)>;
using ResampleFn = std::function<Arrangement(Rng&)>;

struct PermutationOptions {
  std::size_t replications = kDefaultPermutations;
  std::uint64_t seed = 0;
  std::size_t workers = 1;
  bool keep_null = true;
};

/// Evaluates stat(observed), then B replicates; replicate b draws its
/// arrangement from substream(seed, {b}) only, so the result is identical for
/// any worker count. A failing replicate is rethrown naming its index.
TestResult run_permutation_test(const StatisticFn& stat, const ResampleFn& resample,
                                const Arrangement& observed, const PermutationOptions& options);

/// Uniform random permutation of 0..n-1.
std::vector<std::size_t> random_permutation(std::size_t n, Rng& rng);

struct PowerCell {
  double kappa = 0.0;
  std::size_t n = 0;
  std::size_t rejections = 0;
  std::size_t runs = 0;
  double rate = 0.0;
  bool valid = true;
  std::string error;
};

using PowerTable = std::vector<PowerCell>;

struct PowerOptions {
  std::vector<double> kappas;
  std::vector<std::size_t> sizes;
  std::size_t runs = kDefaultMonteCarloRuns;
  double alpha = kDefaultAlpha;
  std::uint64_t seed = 0;
  std::size_t workers = 1;
};

/// Runs `runs` independent (generate, test) draws per (kappa, n) cell and
/// tallies rejections at alpha. Run r of cell c uses substream(seed, {c, r})
/// for data and derive_seed(seed, {c, r, 1}) for its permutation test.
/// A cell whose generator or test throws is reported invalid with the message.
PowerTable power_sweep(const std::function<bool(double kappa, std::size_t n, Rng& data_rng,
                                                std::uint64_t test_seed)>& run_once,
                       const PowerOptions& options);

/// Generic form: `generate(kappa, n, rng)` builds a dataset and
/// `test(dataset, seed)` returns its TestResult.
template <class Generate, class Test>
PowerTable power_sweep(const Generate& generate, const Test& test, const PowerOptions& options) {
  const double alpha = options.alpha;
  return power_sweep(
      [&](double kappa, std::size_t n, Rng& rng, std::uint64_t test_seed) {
        const auto dataset = generate(kappa, n, rng);
        return test(dataset, test_seed).rejects(alpha);
      },
      options);
}

}  // namespace mdf
