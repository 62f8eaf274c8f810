#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qorth::io {

/// 17 significant digits, enough to round-trip any double.
std::string format_double(double value);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

  /// Throws std::invalid_argument when the row width differs from the header.
  void add_row(const std::vector<double>& row);

  std::size_t rows() const { return rows_.size(); }
  void write(std::ostream& os) const;
  std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<double>> rows_;
};

/// Writes `content` to `path` through a sibling temporary file and a rename,
/// so readers never observe a partial file. Throws std::runtime_error.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace qorth::io
