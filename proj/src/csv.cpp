#include "cpsblotto/csv.hpp"

#include <cstdio>
#include <fstream>

#include "cpsblotto/errors.hpp"
#include "cpsblotto/version.hpp"

namespace cpsblotto {

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", value);
  return buf;
}

void CsvTable::add_row(std::vector<std::string> cells) {
  if (cells.size() != header_.size()) throw Error("csv row width does not match header");
  rows_.push_back(std::move(cells));
}

namespace {

void append_line(std::string& out, const std::vector<std::string>& cells) {
  for (std::size_t k = 0; k < cells.size(); ++k) {
    if (k) out += ',';
    out += cells[k];
  }
  out += '\n';
}

}  // namespace

std::string CsvTable::str() const {
  std::string out;
  for (const auto& c : comments_) out += "# " + c + "\n";
  append_line(out, header_);
  for (const auto& row : rows_) append_line(out, row);
  return out;
}

void CsvTable::save(const std::filesystem::path& path) const {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error("cannot write " + path.string());
  file << str();
  if (!file) throw Error("write failed for " + path.string());
}

CsvTable matrix_csv(const Matrix& m, std::string_view row_name, std::string_view col_name) {
  CsvTable table({std::string(row_name), std::string(col_name), "value"});
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      table.add_row({std::to_string(r), std::to_string(c), format_number(m(r, c))});
  return table;
}

std::string provenance_line(std::string_view units) {
  return std::string("cpsblotto ") + version() + "; " + std::string(units);
}

}  // namespace cpsblotto
