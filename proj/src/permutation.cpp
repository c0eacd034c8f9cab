#include "mdf/permutation.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace mdf {

double permutation_pvalue(double observed, std::span<const double> null_stats) {
  if (null_stats.empty()) throw std::invalid_argument("permutation_pvalue: no replicates");
  const auto exceed = std::count_if(null_stats.begin(), null_stats.end(),
                                    [observed](double s) { return s >= observed; });
  return static_cast<double>(exceed + 1) / static_cast<double>(null_stats.size() + 1);
}

std::vector<std::size_t> random_permutation(std::size_t n, Rng& rng) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::shuffle(perm.begin(), perm.end(), rng);
  return perm;
}

TestResult run_permutation_test(const StatisticFn& stat, const ResampleFn& resample,
                                const Arrangement& observed, const PermutationOptions& options) {
  if (options.replications < 1) throw std::invalid_argument("permutation test: B must be >= 1");

  TestResult result;
  result.statistic = stat(observed);
  result.replications = options.replications;
  result.seed = options.seed;

  std::vector<double> null_stats(options.replications);
  parallel_for(options.replications, options.workers, [&](std::size_t b) {
    try {
      Rng rng = substream(options.seed, {b});
      null_stats[b] = stat(resample(rng));
    } catch (const std::exception& e) {
      throw std::runtime_error("permutation replicate " + std::to_string(b) + " failed: " + e.what());
    }
  });

  result.p_value = permutation_pvalue(result.statistic, null_stats);
  if (options.keep_null) result.null_stats = std::move(null_stats);
  return result;
}

PowerTable power_sweep(const std::function<bool(double, std::size_t, Rng&, std::uint64_t)>& run_once,
                       const PowerOptions& options) {
  if (options.runs < 1) throw std::invalid_argument("power_sweep: runs must be >= 1");
  if (!(options.alpha > 0.0 && options.alpha < 1.0))
    throw std::invalid_argument("power_sweep: alpha must lie in (0, 1)");
  if (options.kappas.empty() || options.sizes.empty())
    throw std::invalid_argument("power_sweep: empty kappa or n grid");

  PowerTable table;
  for (const std::size_t n : options.sizes)
    for (const double kappa : options.kappas) {
      PowerCell cell;
      cell.kappa = kappa;
      cell.n = n;
      cell.runs = options.runs;
      table.push_back(cell);
    }

  const std::size_t runs = options.runs;
  const std::size_t jobs = table.size() * runs;
  std::vector<char> rejected(jobs, 0);
  std::vector<std::string> errors(jobs);

  parallel_for(jobs, options.workers, [&](std::size_t job) {
    const std::size_t cell = job / runs;
    const std::size_t run = job % runs;
    try {
      Rng rng = substream(options.seed, {cell, run});
      const std::uint64_t test_seed = derive_seed(options.seed, {cell, run, 1});
      rejected[job] = run_once(table[cell].kappa, table[cell].n, rng, test_seed) ? 1 : 0;
    } catch (const std::exception& e) {
      errors[job] = e.what();
    }
  });

  for (std::size_t cell = 0; cell < table.size(); ++cell) {
    PowerCell& c = table[cell];
    for (std::size_t run = 0; run < runs; ++run) {
      const std::size_t job = cell * runs + run;
      if (!errors[job].empty() && c.valid) {
        c.valid = false;
        c.error = "run " + std::to_string(run) + ": " + errors[job];
      }
      c.rejections += static_cast<std::size_t>(rejected[job]);
    }
    c.rate = c.valid ? static_cast<double>(c.rejections) / static_cast<double>(c.runs) : 0.0;
  }
  return table;
}

}  // namespace mdf
