#include "becgate/csv.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace becgate {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(std::ostream& out, const std::vector<std::string>& columns)
    : out_(out), n_columns_(columns.size()) {
  for (size_t i = 0; i < columns.size(); ++i) {
    out_ << (i ? "," : "") << columns[i];
  }
  out_ << "\n";
}

void CsvWriter::row(const std::vector<double>& values) {
  if (values.size() != n_columns_) {
    throw ConfigError("csv row width does not match the header");
  }
  for (size_t i = 0; i < values.size(); ++i) {
    out_ << (i ? "," : "") << format_double(values[i]);
  }
  out_ << "\n";
}

namespace {

std::vector<double> parse_numeric_row(const std::string& line, bool& ok) {
  std::vector<double> values;
  std::stringstream ss(line);
  std::string cell;
  ok = true;
  while (std::getline(ss, cell, ',')) {
    try {
      size_t used = 0;
      values.push_back(std::stod(cell, &used));
      while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used]))) {
        ++used;
      }
      if (used != cell.size()) ok = false;
    } catch (const std::exception&) {
      ok = false;
    }
    if (!ok) return values;
  }
  return values;
}

}  // namespace

DataSeries read_data_series_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open data file: " + path);
  std::vector<double> tv, yv, sv;
  std::string line;
  int line_no = 0;
  bool expect_sigma = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    bool ok = false;
    std::vector<double> vals = parse_numeric_row(line, ok);
    if (!ok) {
      if (line_no == 1) continue;  // header line
      throw ConfigError(path + ":" + std::to_string(line_no) + ": malformed csv row");
    }
    if (vals.size() != 2 && vals.size() != 3) {
      throw ConfigError(path + ":" + std::to_string(line_no) +
                        ": expected 2 or 3 columns (t, y[, sigma])");
    }
    if (tv.empty()) {
      expect_sigma = vals.size() == 3;
    } else if ((vals.size() == 3) != expect_sigma) {
      throw ConfigError(path + ":" + std::to_string(line_no) + ": inconsistent column count");
    }
    tv.push_back(vals[0]);
    yv.push_back(vals[1]);
    if (vals.size() == 3) sv.push_back(vals[2]);
  }
  if (tv.empty()) throw ConfigError(path + ": no data rows");
  DataSeries data;
  data.t = Eigen::Map<Eigen::VectorXd>(tv.data(), static_cast<Eigen::Index>(tv.size()));
  data.y = Eigen::Map<Eigen::VectorXd>(yv.data(), static_cast<Eigen::Index>(yv.size()));
  if (!sv.empty()) {
    data.sigma =
        Eigen::Map<Eigen::VectorXd>(sv.data(), static_cast<Eigen::Index>(sv.size()));
  }
  data.validate();
  return data;
}

void write_data_series_csv(const std::string& path, const DataSeries& data,
                           const std::string& t_name, const std::string& y_name) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write data file: " + path);
  std::vector<std::string> columns = {t_name, y_name};
  if (data.sigma.size() != 0) columns.push_back("sigma");
  CsvWriter writer(out, columns);
  for (Eigen::Index i = 0; i < data.t.size(); ++i) {
    std::vector<double> row = {data.t[i], data.y[i]};
    if (data.sigma.size() != 0) row.push_back(data.sigma[i]);
    writer.row(row);
  }
}

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory) {
  std::vector<std::string> columns = {"t_s", "a_d_re", "a_d_im", "a_r_re", "a_r_im"};
  for (int n = -2; n <= 2; ++n) columns.push_back("b_" + std::to_string(n) + "_sq");
  for (int n = -2; n <= 2; ++n) columns.push_back("c_" + std::to_string(n) + "_sq");
  columns.push_back("n_d");
  columns.push_back("n_r");
  CsvWriter writer(out, columns);
  for (const TrajectorySample& sample : trajectory.samples) {
    const MeanFieldState& s = sample.state;
    std::vector<double> row = {sample.t, s.a_d.real(), s.a_d.imag(), s.a_r.real(),
                               s.a_r.imag()};
    for (int n = -2; n <= 2; ++n) row.push_back(std::norm(s.b_at(n)));
    for (int n = -2; n <= 2; ++n) row.push_back(std::norm(s.c_at(n)));
    row.push_back(s.n_d);
    row.push_back(s.n_r);
    writer.row(row);
  }
}

std::string file_hash_hex(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot hash missing file: " + path);
  uint64_t hash = 1469598103934665603ull;
  char chunk[4096];
  while (in.read(chunk, sizeof(chunk)) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      hash ^= static_cast<unsigned char>(chunk[i]);
      hash *= 1099511628211ull;
    }
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

}  // namespace becgate
