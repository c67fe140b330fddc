#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "cpsblotto/topology.hpp"

namespace cpsblotto {

/// printf("%.9g"); the fixed precision keeps output byte-stable.
std::string format_number(double value);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

  /// Lines written verbatim before the header, each prefixed with "# ".
  void add_comment(std::string line) { comments_.push_back(std::move(line)); }
  void add_row(std::vector<std::string> cells);

  std::size_t rows() const { return rows_.size(); }
  std::string str() const;
  void save(const std::filesystem::path& path) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::string> comments_;
  std::vector<std::vector<std::string>> rows_;
};

/// Long format: one row per (row, col) entry of the matrix, named by the
/// given column labels.
CsvTable matrix_csv(const Matrix& m, std::string_view row_name, std::string_view col_name);

/// "cpsblotto <version>; <units>"
std::string provenance_line(std::string_view units);

}  // namespace cpsblotto
