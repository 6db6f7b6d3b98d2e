#include "wmlab/bench/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "wmlab/core/errors.hpp"

namespace wmlab {

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

std::size_t CsvTable::column_index(std::string_view name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw InvalidArgument("CSV: missing column '" + std::string(name) + "'");
  return static_cast<std::size_t>(it - columns.begin());
}

bool CsvTable::has_column(std::string_view name) const {
  return std::find(columns.begin(), columns.end(), name) != columns.end();
}

double CsvTable::number(std::size_t row, std::size_t column) const {
  const std::string& cell = rows.at(row).at(column);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc() || ptr != cell.data() + cell.size()) {
    throw InvalidArgument("CSV: row " + std::to_string(row + 1) + ", column '" + columns[column] +
                          "': '" + cell + "' is not a number");
  }
  return v;
}

void CsvTable::add_row(std::vector<std::string> row) {
  if (row.size() != columns.size()) {
    throw DimensionMismatch("CSV: row has " + std::to_string(row.size()) + " fields, expected " +
                            std::to_string(columns.size()));
  }
  rows.push_back(std::move(row));
}

namespace {
void append_line(std::string& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += fields[i];
  }
  out += '\n';
}
}  // namespace

std::string CsvTable::to_string() const {
  std::string out;
  append_line(out, columns);
  for (const auto& r : rows) append_line(out, r);
  return out;
}

void CsvTable::write(const std::string& path) const {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw InvalidArgument("cannot open " + path + " for writing");
  os << to_string();
  if (!os) throw InvalidArgument("write failed: " + path);
}

namespace {
std::vector<std::string> split(std::string_view line) {
  std::vector<std::string> out;
  while (true) {
    const auto comma = line.find(',');
    out.emplace_back(line.substr(0, comma));
    if (comma == std::string_view::npos) break;
    line.remove_prefix(comma + 1);
  }
  return out;
}
}  // namespace

CsvTable parse_csv(std::string_view text, const std::string& source) {
  CsvTable table;
  std::size_t pos = 0;
  int line_no = 0;
  bool header = true;
  while (pos < text.size()) {
    const auto nl = text.find('\n', pos);
    auto line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    auto fields = split(line);
    if (header) {
      table.columns = std::move(fields);
      header = false;
      continue;
    }
    if (fields.size() != table.columns.size()) {
      throw InvalidArgument(source + ":" + std::to_string(line_no) + ": expected " +
                            std::to_string(table.columns.size()) + " fields, got " +
                            std::to_string(fields.size()));
    }
    table.rows.push_back(std::move(fields));
  }
  if (header) throw InvalidArgument(source + ": empty CSV (no header row)");
  return table;
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_csv(buf.str(), path);
}

}  // namespace wmlab
