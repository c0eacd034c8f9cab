#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "mdf/cli.hpp"
#include "mdf/io.hpp"

namespace mdf::cli {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("mdf_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream(path) << text;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Two clusters of 2-d points: the first `n` near the origin, the rest shifted.
void write_clusters(const fs::path& points, const fs::path& labels, std::size_t n, double shift) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> normal;
  std::ofstream p(points), l(labels);
  for (std::size_t i = 0; i < 2 * n; ++i) {
    const double s = i < n ? 0.0 : shift;
    p << normal(rng) + s << ',' << normal(rng) << '\n';
    l << (i < n ? "control" : "case") << '\n';
  }
}

TEST(Cli, HolmOnReferenceRow) {
  const Outcome o = invoke({"holm", "0.001", "0.241", "0.039", "0.004", "0.001", "0.042", "0.588", "0.846", "0.074",
                            "0.493"});
  ASSERT_EQ(o.code, kAccept) << o.err;
  std::vector<double> values;
  std::stringstream line(o.out);
  for (std::string cell; std::getline(line, cell, ',');) values.push_back(std::stod(cell));
  const std::vector<double> expected{0.010, 0.964, 0.273, 0.032, 0.010, 0.273, 1.000, 1.000, 0.370, 1.000};
  ASSERT_EQ(values.size(), expected.size());
  for (std::size_t i = 0; i < values.size(); ++i) EXPECT_NEAR(values[i], expected[i], 5e-4);
}

TEST(Cli, DistOnLinePoints) {
  const fs::path dir = scratch_dir("dist");
  write_text(dir / "points.csv", "0\n1\n3\n");
  const Outcome o = invoke({"dist", "--components", (dir / "points.csv").string(), "--metric", "lp", "--out",
                            (dir / "out").string()});
  ASSERT_EQ(o.code, kAccept) << o.err;
  const DistanceMatrix d = read_distance_csv(dir / "out" / "component_1.csv");
  EXPECT_EQ(d.data(), (std::vector<double>{0, 1, 3, 1, 0, 2, 3, 2, 0}));
}

TEST(Cli, DistPrecomputedPassthroughAndValidation) {
  const fs::path dir = scratch_dir("precomputed");
  write_text(dir / "d.csv", "0,1.5\n1.5,0\n");
  write_text(dir / "bad.csv", "0,1,2\n1,0,3\n2,4,0\n");
  ASSERT_EQ(invoke({"dist", "--components", (dir / "d.csv").string(), "--metric", "precomputed", "--out",
                    (dir / "out").string()})
                .code,
            kAccept);
  EXPECT_EQ(read_distance_csv(dir / "out" / "component_1.csv"), read_distance_csv(dir / "d.csv"));
  const Outcome bad = invoke({"dist", "--components", (dir / "bad.csv").string(), "--metric", "precomputed",
                              "--out", (dir / "out2").string()});
  EXPECT_EQ(bad.code, kDataError);
  EXPECT_NE(bad.err.find("(2, 1)"), std::string::npos) << bad.err;
}

TEST(Cli, HomtestRejectsSeparatedClustersWithDefaultReplicates) {
  const fs::path dir = scratch_dir("homtest");
  write_clusters(dir / "x.csv", dir / "labels.txt", 15, 6.0);
  const Outcome o = invoke({"homtest", "--components", (dir / "x.csv").string(), "--metric", "lp", "--labels",
                            (dir / "labels.txt").string(), "--seed", "3", "--out", (dir / "result.txt").string()});
  EXPECT_EQ(o.code, kReject) << o.err;
  std::ifstream in(dir / "result.txt");
  const TestResult r = read_test_result(in);
  EXPECT_EQ(r.replications, 399U);
  EXPECT_DOUBLE_EQ(r.p_value, 1.0 / 400.0);
}

TEST(Cli, HomtestAcceptsIdenticalGroups) {
  const fs::path dir = scratch_dir("homtest_same");
  write_text(dir / "x.csv", "0\n1\n0\n1\n");
  write_text(dir / "labels.txt", "a\na\nb\nb\n");
  const Outcome o = invoke({"homtest", "--components", (dir / "x.csv").string(), "--metric", "lp", "--labels",
                            (dir / "labels.txt").string(), "--permutations", "49"});
  EXPECT_EQ(o.code, kAccept) << o.err;
  EXPECT_NE(o.out.find("p_value: 1"), std::string::npos) << o.out;
}

TEST(Cli, HomtestLabelMismatchIsDataError) {
  const fs::path dir = scratch_dir("homtest_bad");
  write_text(dir / "x.csv", "0\n1\n2\n3\n4\n");
  write_text(dir / "labels.txt", "a\na\nb\nb\n");
  EXPECT_EQ(invoke({"homtest", "--components", (dir / "x.csv").string(), "--metric", "lp", "--labels",
                    (dir / "labels.txt").string()})
                .code,
            kDataError);
}

TEST(Cli, IndtestNeedsTwoComponents) {
  const fs::path dir = scratch_dir("indtest");
  write_text(dir / "x.csv", "0\n1\n2\n3\n");
  const Outcome o = invoke({"indtest", "--components", (dir / "x.csv").string(), "--metric", "lp"});
  EXPECT_EQ(o.code, kUsage);
}

TEST(Cli, IndtestDetectsCopiedComponent) {
  const fs::path dir = scratch_dir("indtest_copy");
  std::mt19937_64 rng(6);
  std::normal_distribution<double> normal;
  std::ofstream x(dir / "x.csv");
  for (int i = 0; i < 25; ++i) x << normal(rng) << ',' << normal(rng) << '\n';
  x.close();
  const std::string path = (dir / "x.csv").string();
  const Outcome o = invoke({"indtest", "--components", path, path, "--metric", "lp", "--permutations", "99"});
  EXPECT_EQ(o.code, kReject) << o.err;
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(invoke({}).code, kUsage);
  EXPECT_EQ(invoke({"frobnicate"}).code, kUsage);
  EXPECT_EQ(invoke({"holm"}).code, kUsage);
  EXPECT_EQ(invoke({"dist", "--components", "x.csv", "--metric", "nonsense", "--out", "o"}).code, kUsage);
  EXPECT_EQ(invoke({"dist", "--components", "x.csv", "--metric", "cholesky", "--type", "vector", "--out", "o"}).code,
            kUsage);
  EXPECT_EQ(invoke({"simulate", "--scenario", "swiss-roll", "--kappa", "1", "--n", "5", "--out", "o"}).code, kUsage);
  EXPECT_EQ(invoke({"power", "--scenario", "spd-hom", "--kappa", "1", "--n", "5", "--runs", "0"}).code, kUsage);
}

TEST(Cli, MissingFileIsDataError) {
  const fs::path dir = scratch_dir("missing");
  EXPECT_EQ(invoke({"dist", "--components", (dir / "nope.csv").string(), "--metric", "lp", "--out",
                    (dir / "out").string()})
                .code,
            kDataError);
}

TEST(Cli, SimulateIsDeterministic) {
  const fs::path dir = scratch_dir("simulate");
  for (const std::string name : {"spd-hom", "shape-ind"}) {
    for (const std::string run_id : {"a", "b"}) {
      const Outcome o = invoke({"simulate", "--scenario", name, "--kappa", "0.5", "--n", "6", "--seed", "17", "--dim",
                                "4", "--out", (dir / (name + run_id)).string()});
      ASSERT_EQ(o.code, kAccept) << o.err;
    }
    for (const auto& entry : fs::directory_iterator(dir / (name + "a")))
      EXPECT_EQ(slurp(entry.path()), slurp(dir / (name + "b") / entry.path().filename())) << entry.path();
  }
  EXPECT_TRUE(fs::exists(dir / "spd-homa" / "labels.txt"));
  EXPECT_FALSE(fs::exists(dir / "shape-inda" / "labels.txt"));
}

TEST(Cli, SimulatedDataFeedsTheTests) {
  const fs::path dir = scratch_dir("roundtrip");
  ASSERT_EQ(invoke({"simulate", "--scenario", "spd-ind", "--kappa", "0", "--n", "12", "--seed", "2", "--dim", "4",
                    "--out", dir.string()})
                .code,
            kAccept);
  const Outcome o = invoke({"indtest", "--components", (dir / "component_1.csv").string(),
                            (dir / "component_2.csv").string(), (dir / "component_3.csv").string(), "--metric", "lp",
                            "lp", "cholesky", "--permutations", "19"});
  EXPECT_TRUE(o.code == kAccept || o.code == kReject) << o.err;
}

TEST(Cli, PowerTableIndependentOfWorkers) {
  const fs::path dir = scratch_dir("power");
  std::vector<std::string> base{"power", "--scenario", "spd-hom", "--kappa", "1", "4", "--n", "6", "--runs", "6",
                                "--permutations", "19", "--seed", "11", "--dim", "4"};
  auto with = [&](const std::string& workers, const std::string& file) {
    auto args = base;
    args.insert(args.end(), {"--workers", workers, "--out", (dir / file).string()});
    return invoke(args);
  };
  const Outcome one = with("1", "one.csv");
  const Outcome three = with("3", "three.csv");
  ASSERT_EQ(one.code, kAccept) << one.err;
  ASSERT_EQ(three.code, kAccept) << three.err;
  EXPECT_EQ(slurp(dir / "one.csv"), slurp(dir / "three.csv"));
  EXPECT_EQ(one.out, three.out);
  EXPECT_NE(one.err.find("wall_time_seconds"), std::string::npos);
}

}  // namespace
}  // namespace mdf::cli
