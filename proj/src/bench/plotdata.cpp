#include "wmlab/bench/plotdata.hpp"

#include <algorithm>
#include <fstream>

#include "wmlab/core/errors.hpp"

namespace wmlab {

std::vector<std::string> emit_plotdata(const CsvTable& table, const PlotSpec& spec,
                                       const std::string& dir, const std::string& stem,
                                       std::vector<std::string> series) {
  const auto cs = table.column_index(spec.series_column);
  const auto cx = table.column_index(spec.x_column);
  const auto cy = table.column_index(spec.y_column);
  const auto cl = table.column_index(spec.ci_low_column);
  const auto ch = table.column_index(spec.ci_high_column);
  if (series.empty()) {
    for (const auto& row : table.rows) {
      if (std::find(series.begin(), series.end(), row[cs]) == series.end()) series.push_back(row[cs]);
    }
  }
  std::vector<std::string> written;
  for (const auto& name : series) {
    const std::string path = dir + "/" + stem + "_" + name + ".dat";
    std::ofstream os(path, std::ios::binary);
    if (!os) throw InvalidArgument("cannot open " + path + " for writing");
    for (const auto& row : table.rows) {
      if (row[cs] != name) continue;
      os << row[cx] << ' ' << row[cy] << ' ' << row[cl] << ' ' << row[ch] << '\n';
    }
    written.push_back(path);
  }
  return written;
}

}  // namespace wmlab
