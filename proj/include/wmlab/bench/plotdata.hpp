#pragma once

#include <string>
#include <vector>

#include "wmlab/bench/csv.hpp"

namespace wmlab {

struct PlotSpec {
  std::string series_column = "adversary";
  std::string x_column = "epsilon";
  std::string y_column;
  std::string ci_low_column = "ci_low";
  std::string ci_high_column = "ci_high";
};

/// Writes <dir>/<stem>_<series>.dat per series: whitespace-separated
/// "x y ci_low ci_high" lines, no header, rows in CSV order. `series`
/// lists the files to produce (a series without rows gives an empty
/// file); when empty, every series found in the CSV is written.
/// Returns the paths written.
std::vector<std::string> emit_plotdata(const CsvTable& table, const PlotSpec& spec,
                                       const std::string& dir, const std::string& stem,
                                       std::vector<std::string> series = {});

}  // namespace wmlab
