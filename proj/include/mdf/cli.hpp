#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mdf/emdf.hpp"
#include "mdf/objects.hpp"
#include "mdf/permutation.hpp"

namespace mdf::cli {

enum ExitCode : int { kAccept = 0, kUsage = 1, kDataError = 2, kReject = 3 };

struct ComponentSpec {
  std::filesystem::path path;
  ObjectType type = ObjectType::vector;
  MetricKind metric = MetricKind::lp;
};

/// K input components resolving to the same n; `p` serves both the lp
/// metric and, when `combine` is set, the product-metric combination.
struct DatasetDescriptor {
  std::vector<ComponentSpec> components;
  double p = 2.0;
  bool combine = false;

  /// Builds a descriptor from per-component paths, metric names and optional
  /// type names. A single metric or type applies to every component.
  static DatasetDescriptor from_flags(const std::vector<std::string>& paths, const std::vector<std::string>& metrics,
                                      const std::vector<std::string>& types, double p, bool combine);
};

/// Loads every component and returns its distance matrix (combined into one
/// product-metric matrix when descriptor.combine is set).
MultiDistance load_distances(const DatasetDescriptor& descriptor, std::size_t workers);

/// Writes component_<k>.csv (or combined.csv) under out_dir; returns the paths.
std::vector<std::filesystem::path> cmd_dist(const DatasetDescriptor& descriptor, const std::filesystem::path& out_dir,
                                            std::size_t workers);

struct TestOptions {
  std::size_t permutations = kDefaultPermutations;
  std::uint64_t seed = 0;
  double alpha = kDefaultAlpha;
  std::size_t workers = 1;
  std::optional<std::filesystem::path> out;
};

TestResult cmd_homtest(const DatasetDescriptor& descriptor, const std::filesystem::path& labels,
                       const TestOptions& options);
TestResult cmd_indtest(const DatasetDescriptor& descriptor, const TestOptions& options);

struct PowerCommand {
  std::string scenario;
  std::vector<double> kappas;
  std::vector<std::size_t> sizes;
  std::size_t runs = kDefaultMonteCarloRuns;
  std::size_t permutations = kDefaultPermutations;
  std::uint64_t seed = 0;
  double alpha = kDefaultAlpha;
  std::size_t workers = 1;
  std::size_t spd_dim = 20;
  MetricKind spd_metric = MetricKind::cholesky;
  std::optional<std::filesystem::path> out;
};

PowerTable cmd_power(const PowerCommand& command);

struct SimulateCommand {
  std::string scenario;
  double kappa = 0.0;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::size_t spd_dim = 20;
  std::filesystem::path out_dir;
};

/// Writes component_<k>.csv object files, labels.txt for two-sample
/// scenarios and meta.txt; returns the written paths.
std::vector<std::filesystem::path> cmd_simulate(const SimulateCommand& command);

/// Entry point shared by the executable and the tests.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mdf::cli
