#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mdf/datagen.hpp"
#include "mdf/emdf.hpp"
#include "mdf/metrics.hpp"
#include "mdf/objects.hpp"
#include "mdf/permutation.hpp"

namespace mdf {

/// Malformed input. `line()` is 1-based, or 0 when not tied to a line.
class DataError : public std::runtime_error {
 public:
  DataError(const std::string& source, std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Shortest round-trip-safe rendering: 17 significant digits.
std::string format_double(double value);

// Distance matrices and EMDF matrices: n rows of n comma-separated values, no header.
DistanceMatrix read_distance_csv(std::istream& in, const std::string& source = "<stream>");
DistanceMatrix read_distance_csv(const std::filesystem::path& path);
void write_matrix_csv(std::ostream& out, std::size_t n, const std::vector<double>& row_major);
void write_distance_csv(const std::filesystem::path& path, const DistanceMatrix& d);
void write_emdf_csv(const std::filesystem::path& path, const EmdfMatrix& f);

// Object files.
//   vector: one object per row.
//   spd:    one object per row: dim, then dim*dim row-major entries.
//   shape:  blocks of "x,y" rows, one block per object, blocks separated by blank lines.
//   curve:  blocks of "t,value" rows, one block per object, blocks separated by blank lines.
ObjectList read_objects(std::istream& in, ObjectType type, const std::string& source = "<stream>");
ObjectList read_objects(const std::filesystem::path& path, ObjectType type);
void write_objects(std::ostream& out, const ObjectList& objects);
void write_objects(const std::filesystem::path& path, const ObjectList& objects);

/// Two-sample labels: one token per line, exactly two distinct tokens.
/// The token seen first is group 0.
struct GroupLabels {
  std::vector<std::uint8_t> groups;
  std::string first;
  std::string second;
};
GroupLabels read_labels(std::istream& in, const std::string& source = "<stream>");
GroupLabels read_labels(const std::filesystem::path& path);
void write_labels(const std::filesystem::path& path, const std::vector<std::uint8_t>& groups);

// TestResult record: "key: value" lines for statistic, p_value, replications, seed.
void write_test_result(std::ostream& out, const TestResult& result);
void write_test_result(const std::filesystem::path& path, const TestResult& result);
TestResult read_test_result(std::istream& in, const std::string& source = "<stream>");

// PowerTable: header "kappa,n,rejections,runs,rate"; invalid cells carry rate "nan".
void write_power_table(std::ostream& out, const PowerTable& table);
void write_power_table(const std::filesystem::path& path, const PowerTable& table);
PowerTable read_power_table(std::istream& in, const std::string& source = "<stream>");

/// Sidecar describing a simulated dataset.
struct DatasetMetadata {
  std::string scenario;
  double kappa = 0.0;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::uint64_t base_checksum = 0;
  std::size_t jittered = 0;
};
void write_metadata(const std::filesystem::path& path, const DatasetMetadata& meta);
DatasetMetadata read_metadata(std::istream& in, const std::string& source = "<stream>");

}  // namespace mdf
