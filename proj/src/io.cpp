#include "mdf/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace mdf {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool is_blank(std::string_view line) { return trim(line).empty(); }

double parse_double(std::string_view token, const std::string& source, std::size_t line) {
  token = trim(token);
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (token.empty() || ec != std::errc() || ptr != token.data() + token.size())
    throw DataError(source, line, "cannot parse number '" + std::string(token) + "'");
  return value;
}

std::uint64_t parse_unsigned(std::string_view token, const std::string& source, std::size_t line) {
  token = trim(token);
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (token.empty() || ec != std::errc() || ptr != token.data() + token.size())
    throw DataError(source, line, "cannot parse integer '" + std::string(token) + "'");
  return value;
}

std::vector<double> parse_row(std::string_view line, const std::string& source, std::size_t line_no) {
  std::vector<double> values;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    values.push_back(parse_double(line.substr(start, comma - start), source, line_no));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return values;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError(path.string(), 0, "cannot open file");
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError(path.string(), 0, "cannot open file for writing");
  return out;
}

void write_row(std::ostream& out, const double* values, std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) {
    if (i > 0) out << ',';
    out << format_double(values[i]);
  }
  out << '\n';
}

/// Reads "key: value" lines into a map, rejecting duplicates.
std::map<std::string, std::pair<std::string, std::size_t>> read_record(std::istream& in, const std::string& source) {
  std::map<std::string, std::pair<std::string, std::size_t>> fields;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos) throw DataError(source, line_no, "expected 'key: value'");
    const std::string key(trim(std::string_view(line).substr(0, colon)));
    const std::string value(trim(std::string_view(line).substr(colon + 1)));
    if (!fields.emplace(key, std::make_pair(value, line_no)).second)
      throw DataError(source, line_no, "duplicate key '" + key + "'");
  }
  return fields;
}

const std::pair<std::string, std::size_t>& field(
    const std::map<std::string, std::pair<std::string, std::size_t>>& fields, const std::string& key,
    const std::string& source) {
  const auto it = fields.find(key);
  if (it == fields.end()) throw DataError(source, 0, "missing key '" + key + "'");
  return it->second;
}

}  // namespace

DataError::DataError(const std::string& source, std::size_t line, const std::string& what)
    : std::runtime_error(source + (line > 0 ? ":" + std::to_string(line) : std::string()) + ": " + what),
      line_(line) {}

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

DistanceMatrix read_distance_csv(std::istream& in, const std::string& source) {
  std::vector<double> values;
  std::size_t n = 0;
  std::size_t rows = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    auto row = parse_row(line, source, line_no);
    if (rows == 0) n = row.size();
    if (row.size() != n)
      throw DataError(source, line_no, "expected " + std::to_string(n) + " values, found " + std::to_string(row.size()));
    values.insert(values.end(), row.begin(), row.end());
    ++rows;
  }
  if (rows == 0) throw DataError(source, 0, "empty distance matrix");
  if (rows != n) throw DataError(source, 0, "matrix is not square");
  try {
    return DistanceMatrix(n, std::move(values));
  } catch (const std::invalid_argument& e) {
    throw DataError(source, 0, e.what());
  }
}

DistanceMatrix read_distance_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_distance_csv(in, path.string());
}

void write_matrix_csv(std::ostream& out, std::size_t n, const std::vector<double>& row_major) {
  for (std::size_t i = 0; i < n; ++i) write_row(out, row_major.data() + i * n, n);
}

void write_distance_csv(const std::filesystem::path& path, const DistanceMatrix& d) {
  auto out = open_out(path);
  write_matrix_csv(out, d.size(), d.data());
}

void write_emdf_csv(const std::filesystem::path& path, const EmdfMatrix& f) {
  auto out = open_out(path);
  write_matrix_csv(out, f.size(), f.data());
}

ObjectList read_objects(std::istream& in, ObjectType type, const std::string& source) {
  std::string line;
  std::size_t line_no = 0;

  auto wrap = [&](auto&& make) {
    try {
      return make();
    } catch (const std::invalid_argument& e) {
      throw DataError(source, line_no, e.what());
    }
  };

  switch (type) {
    case ObjectType::vector: {
      std::vector<Eigen::VectorXd> out;
      while (std::getline(in, line)) {
        ++line_no;
        if (is_blank(line)) continue;
        const auto row = parse_row(line, source, line_no);
        if (!out.empty() && static_cast<std::size_t>(out.front().size()) != row.size())
          throw DataError(source, line_no, "vector length differs from the first object");
        out.push_back(Eigen::Map<const Eigen::VectorXd>(row.data(), static_cast<Eigen::Index>(row.size())));
      }
      if (out.empty()) throw DataError(source, 0, "no objects");
      return out;
    }
    case ObjectType::spd: {
      std::vector<SpdMatrix> out;
      while (std::getline(in, line)) {
        ++line_no;
        if (is_blank(line)) continue;
        const auto row = parse_row(line, source, line_no);
        const double dim_value = row.front();
        if (!(dim_value >= 1.0) || std::floor(dim_value) != dim_value)
          throw DataError(source, line_no, "first value must be the matrix dimension");
        const auto dim = static_cast<std::size_t>(dim_value);
        if (row.size() != 1 + dim * dim)
          throw DataError(source, line_no, "expected dim*dim entries after the dimension");
        Eigen::MatrixXd m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
        for (std::size_t r = 0; r < dim; ++r)
          for (std::size_t c = 0; c < dim; ++c)
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = row[1 + r * dim + c];
        out.push_back(wrap([&] { return SpdMatrix(std::move(m)); }));
      }
      if (out.empty()) throw DataError(source, 0, "no objects");
      return out;
    }
    case ObjectType::shape:
    case ObjectType::curve: {
      std::vector<ShapeObject> shapes;
      std::vector<FunctionalCurve> curves;
      std::vector<std::array<double, 2>> block;
      auto flush = [&] {
        if (block.empty()) return;
        if (type == ObjectType::shape) {
          Eigen::MatrixX2d pts(static_cast<Eigen::Index>(block.size()), 2);
          for (std::size_t i = 0; i < block.size(); ++i) {
            pts(static_cast<Eigen::Index>(i), 0) = block[i][0];
            pts(static_cast<Eigen::Index>(i), 1) = block[i][1];
          }
          shapes.push_back(wrap([&] { return ShapeObject(std::move(pts)); }));
        } else {
          std::vector<double> t, v;
          for (const auto& p : block) {
            t.push_back(p[0]);
            v.push_back(p[1]);
          }
          curves.push_back(wrap([&] { return FunctionalCurve(std::move(t), std::move(v)); }));
        }
        block.clear();
      };
      while (std::getline(in, line)) {
        ++line_no;
        if (is_blank(line)) {
          flush();
          continue;
        }
        const auto row = parse_row(line, source, line_no);
        if (row.size() != 2) throw DataError(source, line_no, "expected two values per row");
        block.push_back({row[0], row[1]});
      }
      flush();
      if (type == ObjectType::shape) {
        if (shapes.empty()) throw DataError(source, 0, "no objects");
        return shapes;
      }
      if (curves.empty()) throw DataError(source, 0, "no objects");
      return curves;
    }
    case ObjectType::precomputed: break;
  }
  throw DataError(source, 0, "precomputed inputs are distance matrices, not objects");
}

ObjectList read_objects(const std::filesystem::path& path, ObjectType type) {
  auto in = open_in(path);
  return read_objects(in, type, path.string());
}

void write_objects(std::ostream& out, const ObjectList& objects) {
  std::visit(
      [&](const auto& list) {
        using T = typename std::decay_t<decltype(list)>::value_type;
        bool first = true;
        for (const auto& obj : list) {
          if constexpr (std::is_same_v<T, Eigen::VectorXd>) {
            write_row(out, obj.data(), static_cast<std::size_t>(obj.size()));
          } else if constexpr (std::is_same_v<T, SpdMatrix>) {
            const auto& m = obj.entries();
            out << m.rows();
            for (Eigen::Index r = 0; r < m.rows(); ++r)
              for (Eigen::Index c = 0; c < m.cols(); ++c) out << ',' << format_double(m(r, c));
            out << '\n';
          } else if constexpr (std::is_same_v<T, ShapeObject>) {
            if (!first) out << '\n';
            const auto& pts = obj.landmarks();
            for (Eigen::Index r = 0; r < pts.rows(); ++r)
              out << format_double(pts(r, 0)) << ',' << format_double(pts(r, 1)) << '\n';
          } else {
            if (!first) out << '\n';
            for (std::size_t i = 0; i < obj.grid().size(); ++i)
              out << format_double(obj.grid()[i]) << ',' << format_double(obj.values()[i]) << '\n';
          }
          first = false;
        }
      },
      objects);
}

void write_objects(const std::filesystem::path& path, const ObjectList& objects) {
  auto out = open_out(path);
  write_objects(out, objects);
}

GroupLabels read_labels(std::istream& in, const std::string& source) {
  GroupLabels labels;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string token(trim(line));
    if (token.empty()) continue;
    if (labels.first.empty()) labels.first = token;
    if (token == labels.first) {
      labels.groups.push_back(0);
      continue;
    }
    if (labels.second.empty()) labels.second = token;
    if (token != labels.second) throw DataError(source, line_no, "more than two distinct labels");
    labels.groups.push_back(1);
  }
  if (labels.second.empty()) throw DataError(source, 0, "labels must contain exactly two groups");
  return labels;
}

GroupLabels read_labels(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_labels(in, path.string());
}

void write_labels(const std::filesystem::path& path, const std::vector<std::uint8_t>& groups) {
  auto out = open_out(path);
  for (const auto g : groups) out << (g == 0 ? "1" : "2") << '\n';
}

void write_test_result(std::ostream& out, const TestResult& result) {
  out << "statistic: " << format_double(result.statistic) << '\n'
      << "p_value: " << format_double(result.p_value) << '\n'
      << "replications: " << result.replications << '\n'
      << "seed: " << result.seed << '\n';
}

void write_test_result(const std::filesystem::path& path, const TestResult& result) {
  auto out = open_out(path);
  write_test_result(out, result);
}

TestResult read_test_result(std::istream& in, const std::string& source) {
  const auto fields = read_record(in, source);
  TestResult r;
  const auto& stat = field(fields, "statistic", source);
  const auto& p = field(fields, "p_value", source);
  const auto& reps = field(fields, "replications", source);
  const auto& seed = field(fields, "seed", source);
  r.statistic = parse_double(stat.first, source, stat.second);
  r.p_value = parse_double(p.first, source, p.second);
  r.replications = parse_unsigned(reps.first, source, reps.second);
  r.seed = parse_unsigned(seed.first, source, seed.second);
  return r;
}

void write_power_table(std::ostream& out, const PowerTable& table) {
  out << "kappa,n,rejections,runs,rate\n";
  for (const auto& c : table)
    out << format_double(c.kappa) << ',' << c.n << ',' << c.rejections << ',' << c.runs << ','
        << (c.valid ? format_double(c.rate) : std::string("nan")) << '\n';
}

void write_power_table(const std::filesystem::path& path, const PowerTable& table) {
  auto out = open_out(path);
  write_power_table(out, table);
}

PowerTable read_power_table(std::istream& in, const std::string& source) {
  std::string line;
  if (!std::getline(in, line) || trim(line) != "kappa,n,rejections,runs,rate")
    throw DataError(source, 1, "missing header 'kappa,n,rejections,runs,rate'");
  PowerTable table;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    std::vector<std::string_view> cols;
    std::string_view rest(line);
    for (;;) {
      const auto comma = rest.find(',');
      cols.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (cols.size() != 5) throw DataError(source, line_no, "expected 5 columns");
    PowerCell c;
    c.kappa = parse_double(cols[0], source, line_no);
    c.n = parse_unsigned(cols[1], source, line_no);
    c.rejections = parse_unsigned(cols[2], source, line_no);
    c.runs = parse_unsigned(cols[3], source, line_no);
    c.rate = parse_double(cols[4], source, line_no);
    if (std::isnan(c.rate)) {
      c.valid = false;
      c.rate = 0.0;
    }
    table.push_back(c);
  }
  return table;
}

void write_metadata(const std::filesystem::path& path, const DatasetMetadata& meta) {
  auto out = open_out(path);
  char checksum[17];
  std::snprintf(checksum, sizeof checksum, "%016llx", static_cast<unsigned long long>(meta.base_checksum));
  out << "scenario: " << meta.scenario << '\n'
      << "kappa: " << format_double(meta.kappa) << '\n'
      << "n: " << meta.n << '\n'
      << "seed: " << meta.seed << '\n'
      << "base_checksum: " << checksum << '\n'
      << "jittered: " << meta.jittered << '\n';
}

DatasetMetadata read_metadata(std::istream& in, const std::string& source) {
  const auto fields = read_record(in, source);
  DatasetMetadata m;
  m.scenario = field(fields, "scenario", source).first;
  const auto& kappa = field(fields, "kappa", source);
  m.kappa = parse_double(kappa.first, source, kappa.second);
  const auto& n = field(fields, "n", source);
  m.n = parse_unsigned(n.first, source, n.second);
  const auto& seed = field(fields, "seed", source);
  m.seed = parse_unsigned(seed.first, source, seed.second);
  const auto& sum = field(fields, "base_checksum", source);
  m.base_checksum = std::stoull(sum.first, nullptr, 16);
  const auto& jit = field(fields, "jittered", source);
  m.jittered = parse_unsigned(jit.first, source, jit.second);
  return m;
}

}  // namespace mdf
