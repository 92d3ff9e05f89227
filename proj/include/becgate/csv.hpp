// CSV input/output and small file utilities.
#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "becgate/fitkit.hpp"
#include "becgate/retrieval.hpp"

namespace becgate {

// Fixed 17-significant-digit formatting so outputs are byte-reproducible.
std::string format_double(double v);

// One header line, comma-separated numeric rows.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, const std::vector<std::string>& columns);
  void row(const std::vector<double>& values);

 private:
  std::ostream& out_;
  size_t n_columns_;
};

// Columns t, y and optionally sigma; a leading non-numeric header line is
// skipped. Throws ConfigError on malformed rows.
DataSeries read_data_series_csv(const std::string& path);

void write_data_series_csv(const std::string& path, const DataSeries& data,
                           const std::string& t_name = "t_s",
                           const std::string& y_name = "y");

// Trajectory export: t_s, re/im of a_d and a_r, |b_n|^2 and |c_n|^2 for
// n in [-2, 2], N_d, N_r.
void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory);

// FNV-1a 64-bit hash of a file's bytes, as a hex string (manifest content hash).
std::string file_hash_hex(const std::string& path);

}  // namespace becgate
