#include "mdf/cli.hpp"

#include <chrono>
#include <filesystem>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "mdf/datagen.hpp"
#include "mdf/homogeneity.hpp"
#include "mdf/independence.hpp"
#include "mdf/io.hpp"
#include "mdf/multiple_testing.hpp"
#include "mdf/parallel.hpp"

namespace mdf::cli {

namespace {

/// Usage problems detected after flag parsing.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

MultiDistance dataset_distances(const Dataset& data, MetricKind spd_metric) {
  std::vector<DistanceMatrix> comps;
  for (std::size_t k = 0; k < data.components.size(); ++k) {
    MetricKind metric = data.metrics[k];
    if (metric == MetricKind::cholesky || metric == MetricKind::air) metric = spd_metric;
    comps.push_back(object_distances(data.components[k], metric, 2.0, 1));
  }
  return MultiDistance(std::move(comps));
}

void ensure_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw DataError(dir.string(), 0, "cannot create directory: " + ec.message());
}

void print_result(std::ostream& out, const TestResult& result, double alpha) {
  write_test_result(out, result);
  out << "decision: " << (result.rejects(alpha) ? "reject" : "accept") << " at alpha " << format_double(alpha)
      << '\n';
}

}  // namespace

DatasetDescriptor DatasetDescriptor::from_flags(const std::vector<std::string>& paths,
                                                const std::vector<std::string>& metrics,
                                                const std::vector<std::string>& types, double p, bool combine) {
  if (paths.empty()) throw UsageError("--components needs at least one file");
  if (metrics.size() != 1 && metrics.size() != paths.size())
    throw UsageError("--metric needs one name, or one per component");
  if (!types.empty() && types.size() != 1 && types.size() != paths.size())
    throw UsageError("--type needs one name, or one per component");
  if (!(p >= 1.0)) throw UsageError("--p must be >= 1");

  DatasetDescriptor d;
  d.p = p;
  d.combine = combine;
  for (std::size_t k = 0; k < paths.size(); ++k) {
    ComponentSpec spec;
    spec.path = paths[k];
    try {
      spec.metric = parse_metric(metrics.size() == 1 ? metrics[0] : metrics[k]);
      spec.type = types.empty() ? natural_type(spec.metric)
                                : parse_object_type(types.size() == 1 ? types[0] : types[k]);
      require_compatible(spec.type, spec.metric);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    d.components.push_back(std::move(spec));
  }
  return d;
}

MultiDistance load_distances(const DatasetDescriptor& descriptor, std::size_t workers) {
  std::vector<DistanceMatrix> comps;
  for (const auto& spec : descriptor.components) {
    if (spec.metric == MetricKind::precomputed) {
      comps.push_back(read_distance_csv(spec.path));
      continue;
    }
    const ObjectList objects = read_objects(spec.path, spec.type);
    try {
      comps.push_back(object_distances(objects, spec.metric, descriptor.p, workers));
    } catch (const std::exception& e) {
      throw DataError(spec.path.string(), 0, e.what());
    }
  }
  const std::size_t n = comps.front().size();
  for (std::size_t k = 0; k < comps.size(); ++k)
    if (comps[k].size() != n)
      throw DataError(descriptor.components[k].path.string(), 0,
                      "component has " + std::to_string(comps[k].size()) + " objects, expected " + std::to_string(n));
  if (descriptor.combine && comps.size() > 1) {
    DistanceMatrix combined = product_matrix(comps, descriptor.p);
    comps.clear();
    comps.push_back(std::move(combined));
  }
  return MultiDistance(std::move(comps));
}

std::vector<std::filesystem::path> cmd_dist(const DatasetDescriptor& descriptor, const std::filesystem::path& out_dir,
                                            std::size_t workers) {
  const MultiDistance md = load_distances(descriptor, workers);
  ensure_directory(out_dir);
  std::vector<std::filesystem::path> written;
  if (descriptor.combine && descriptor.components.size() > 1) {
    written.push_back(out_dir / "combined.csv");
    write_distance_csv(written.back(), md.component(0));
    return written;
  }
  for (std::size_t k = 0; k < md.component_count(); ++k) {
    written.push_back(out_dir / ("component_" + std::to_string(k + 1) + ".csv"));
    write_distance_csv(written.back(), md.component(k));
  }
  return written;
}

TestResult cmd_homtest(const DatasetDescriptor& descriptor, const std::filesystem::path& labels,
                       const TestOptions& options) {
  MultiDistance md = load_distances(descriptor, options.workers);
  const GroupLabels groups = read_labels(labels);
  if (groups.groups.size() != md.size())
    throw DataError(labels.string(), 0,
                    "has " + std::to_string(groups.groups.size()) + " labels for " + std::to_string(md.size()) +
                        " objects");
  std::unique_ptr<TwoSampleLayout> layout;
  try {
    layout = std::make_unique<TwoSampleLayout>(std::move(md), groups.groups);
  } catch (const std::invalid_argument& e) {
    throw DataError(labels.string(), 0, e.what());
  }
  const TestResult result = mks_test(
      *layout, {.replications = options.permutations, .seed = options.seed, .workers = options.workers, .keep_null = false});
  if (options.out) write_test_result(*options.out, result);
  return result;
}

TestResult cmd_indtest(const DatasetDescriptor& descriptor, const TestOptions& options) {
  if (descriptor.components.size() < 2) throw UsageError("indtest needs at least two components");
  if (descriptor.combine) throw UsageError("--combine does not apply to indtest");
  const MultiDistance md = load_distances(descriptor, options.workers);
  if (md.size() < 3) throw DataError(descriptor.components.front().path.string(), 0, "indtest needs n >= 3");
  const TestResult result = ma_test(
      md, {.replications = options.permutations, .seed = options.seed, .workers = options.workers, .keep_null = false});
  if (options.out) write_test_result(*options.out, result);
  return result;
}

PowerTable cmd_power(const PowerCommand& command) {
  const auto& names = ScenarioLibrary::names();
  if (std::find(names.begin(), names.end(), command.scenario) == names.end())
    throw UsageError("unknown scenario '" + command.scenario + "'");
  if (command.kappas.empty() || command.sizes.empty()) throw UsageError("--kappa and --n grids must be non-empty");
  for (const std::size_t n : command.sizes)
    if (n < (ScenarioLibrary::is_homogeneity(command.scenario) ? 2U : 3U))
      throw UsageError("sample size too small for scenario " + command.scenario);
  if (command.spd_metric != MetricKind::cholesky && command.spd_metric != MetricKind::air)
    throw UsageError("--spd-metric must be cholesky or air");

  const ScenarioLibrary library(ScenarioConfig{.spd_dim = command.spd_dim});
  const std::string scenario = command.scenario;
  const bool two_sample = ScenarioLibrary::is_homogeneity(scenario);
  const std::size_t permutations = command.permutations;

  auto generate = [&](double kappa, std::size_t n, Rng& rng) { return library.generate(scenario, kappa, n, rng); };
  auto test = [&](const Dataset& data, std::uint64_t seed) {
    const PermutationOptions opts{.replications = permutations, .seed = seed, .workers = 1, .keep_null = false};
    MultiDistance md = dataset_distances(data, command.spd_metric);
    if (two_sample) return mks_test(TwoSampleLayout(std::move(md), data.groups), opts);
    return ma_test(md, opts);
  };

  PowerTable table = power_sweep(generate, test,
                                 PowerOptions{.kappas = command.kappas,
                                              .sizes = command.sizes,
                                              .runs = command.runs,
                                              .alpha = command.alpha,
                                              .seed = command.seed,
                                              .workers = command.workers});
  if (command.out) write_power_table(*command.out, table);
  return table;
}

std::vector<std::filesystem::path> cmd_simulate(const SimulateCommand& command) {
  const auto& names = ScenarioLibrary::names();
  if (std::find(names.begin(), names.end(), command.scenario) == names.end())
    throw UsageError("unknown scenario '" + command.scenario + "'");
  const ScenarioLibrary library(ScenarioConfig{.spd_dim = command.spd_dim});
  Rng rng = substream(command.seed, {0});
  const Dataset data = library.generate(command.scenario, command.kappa, command.n, rng);

  ensure_directory(command.out_dir);
  std::vector<std::filesystem::path> written;
  for (std::size_t k = 0; k < data.components.size(); ++k) {
    written.push_back(command.out_dir / ("component_" + std::to_string(k + 1) + ".csv"));
    write_objects(written.back(), data.components[k]);
  }
  if (data.is_two_sample()) {
    written.push_back(command.out_dir / "labels.txt");
    write_labels(written.back(), data.groups);
  }
  written.push_back(command.out_dir / "meta.txt");
  write_metadata(written.back(), DatasetMetadata{.scenario = data.scenario,
                                                 .kappa = data.kappa,
                                                 .n = data.n,
                                                 .seed = command.seed,
                                                 .base_checksum = library.base_checksum(),
                                                 .jittered = data.jittered});
  return written;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Metric distribution function inference: distances, MKS and MA tests, power studies"};
  app.require_subcommand(1);

  std::size_t workers = default_workers();
  std::vector<std::string> paths, metrics, types;
  double p = 2.0;
  bool combine = false;
  std::string labels;
  TestOptions test;
  std::string out_path;

  auto add_descriptor = [&](CLI::App* cmd) {
    cmd->add_option("--components", paths, "Input files, one per component")->required();
    cmd->add_option("--metric", metrics,
                    "Metric per component: lp, cholesky, air, shape-riemannian, sphere, l2, precomputed")
        ->required();
    cmd->add_option("--type", types, "Object type per component (defaults from the metric)");
    cmd->add_option("--p", p, "p for the lp metric and the product combination")->capture_default_str();
    cmd->add_flag("--combine", combine, "Combine components into one l_p product metric");
    cmd->add_option("--workers", workers, "Worker threads (default: $MDF_WORKERS or hardware)");
  };
  auto add_test = [&](CLI::App* cmd) {
    cmd->add_option("--permutations", test.permutations, "Permutation replicates B")->capture_default_str();
    cmd->add_option("--seed", test.seed, "Random seed")->capture_default_str();
    cmd->add_option("--alpha", test.alpha, "Significance level")->capture_default_str();
    cmd->add_option("--out", out_path, "Write the result record to this file");
  };

  auto* dist = app.add_subcommand("dist", "Compute pairwise distance matrices");
  add_descriptor(dist);
  dist->add_option("--out", out_path, "Output directory")->required();

  auto* homtest = app.add_subcommand("homtest", "MKS two-sample homogeneity test");
  add_descriptor(homtest);
  add_test(homtest);
  homtest->add_option("--labels", labels, "Group label file, one label per object")->required();

  auto* indtest = app.add_subcommand("indtest", "MA mutual independence test");
  add_descriptor(indtest);
  add_test(indtest);

  PowerCommand power;
  std::string spd_metric = "cholesky";
  auto* power_cmd = app.add_subcommand("power", "Monte Carlo power study over a scenario");
  power_cmd->add_option("--scenario", power.scenario, "spd-hom, shape-hom, spd-ind or shape-ind")->required();
  power_cmd->add_option("--kappa", power.kappas, "Kappa grid")->required();
  power_cmd->add_option("--n", power.sizes, "Sample size grid (per group for two-sample scenarios)")->required();
  power_cmd->add_option("--runs", power.runs, "Monte Carlo runs per cell")->capture_default_str();
  power_cmd->add_option("--permutations", power.permutations, "Permutation replicates B")->capture_default_str();
  power_cmd->add_option("--seed", power.seed, "Random seed")->capture_default_str();
  power_cmd->add_option("--alpha", power.alpha, "Significance level")->capture_default_str();
  power_cmd->add_option("--dim", power.spd_dim, "Dimension of the synthetic SPD base")->capture_default_str();
  power_cmd->add_option("--spd-metric", spd_metric, "cholesky or air")->capture_default_str();
  power_cmd->add_option("--workers", workers, "Worker threads (default: $MDF_WORKERS or hardware)");
  power_cmd->add_option("--out", out_path, "PowerTable CSV output");

  SimulateCommand simulate;
  auto* sim = app.add_subcommand("simulate", "Write one synthetic dataset");
  sim->add_option("--scenario", simulate.scenario, "spd-hom, shape-hom, spd-ind or shape-ind")->required();
  sim->add_option("--kappa", simulate.kappa, "Kappa")->required();
  sim->add_option("--n", simulate.n, "Sample size (per group for two-sample scenarios)")->required();
  sim->add_option("--seed", simulate.seed, "Random seed")->capture_default_str();
  sim->add_option("--dim", simulate.spd_dim, "Dimension of the synthetic SPD base")->capture_default_str();
  sim->add_option("--out", out_path, "Output directory")->required();

  std::vector<double> pvalues;
  auto* holm = app.add_subcommand("holm", "Holm-adjust p-values");
  holm->add_option("pvalues", pvalues, "p-values")->required();

  std::vector<const char*> argv{"mdf"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kAccept;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kAccept;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  if (workers == 0) {
    err << "error: --workers must be positive\n";
    return kUsage;
  }
  test.workers = workers;
  if (!out_path.empty()) test.out = out_path;

  try {
    if (dist->parsed()) {
      const auto descriptor = DatasetDescriptor::from_flags(paths, metrics, types, p, combine);
      for (const auto& path : cmd_dist(descriptor, out_path, workers)) out << path.string() << '\n';
      return kAccept;
    }
    if (homtest->parsed() || indtest->parsed()) {
      if (test.permutations < 1) throw UsageError("--permutations must be >= 1");
      if (!(test.alpha > 0.0 && test.alpha < 1.0)) throw UsageError("--alpha must lie in (0, 1)");
      const auto descriptor = DatasetDescriptor::from_flags(paths, metrics, types, p, combine);
      const TestResult result =
          homtest->parsed() ? cmd_homtest(descriptor, labels, test) : cmd_indtest(descriptor, test);
      print_result(out, result, test.alpha);
      return result.rejects(test.alpha) ? kReject : kAccept;
    }
    if (power_cmd->parsed()) {
      if (power.runs < 1) throw UsageError("--runs must be >= 1");
      if (power.permutations < 1) throw UsageError("--permutations must be >= 1");
      if (!(power.alpha > 0.0 && power.alpha < 1.0)) throw UsageError("--alpha must lie in (0, 1)");
      try {
        power.spd_metric = parse_metric(spd_metric);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      power.workers = workers;
      if (!out_path.empty()) power.out = out_path;
      const auto start = std::chrono::steady_clock::now();
      const PowerTable table = cmd_power(power);
      const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
      write_power_table(out, table);
      for (const auto& cell : table)
        if (!cell.valid) err << "invalid cell kappa=" << format_double(cell.kappa) << " n=" << cell.n << ": "
                             << cell.error << '\n';
      err << "wall_time_seconds: " << elapsed.count() << '\n';
      return kAccept;
    }
    if (sim->parsed()) {
      simulate.out_dir = out_path;
      for (const auto& path : cmd_simulate(simulate)) out << path.string() << '\n';
      return kAccept;
    }
    if (holm->parsed()) {
      const auto adjusted = holm_adjust(pvalues);
      for (std::size_t i = 0; i < adjusted.size(); ++i) out << (i ? "," : "") << format_double(adjusted[i]);
      out << '\n';
      return kAccept;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  }
  return kUsage;
}

}  // namespace mdf::cli
