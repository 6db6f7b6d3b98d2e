#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace wmlab {

/// Fixed numeric formatting used in every CSV ("%.10g"), so re-runs are
/// byte-identical.
std::string format_number(double v);

/// Comma-separated, header row, LF line endings, no quoting (fields never
/// contain commas).
struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  /// Throws InvalidArgument when the column is missing.
  [[nodiscard]] std::size_t column_index(std::string_view name) const;
  [[nodiscard]] bool has_column(std::string_view name) const;
  [[nodiscard]] double number(std::size_t row, std::size_t column) const;

  void add_row(std::vector<std::string> row);
  [[nodiscard]] std::string to_string() const;
  void write(const std::string& path) const;
};

CsvTable parse_csv(std::string_view text, const std::string& source = "<csv>");
CsvTable read_csv(const std::string& path);

}  // namespace wmlab
