#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wmlab/bench/csv.hpp"

namespace wmlab {

struct OverheadRow {
  int d = 0;
  int element_bytes = 8;
  /// d^2 * element_bytes.
  std::uint64_t storage_bytes = 0;
  /// Bytes held by the matrix actually built (0 when skipped).
  std::uint64_t allocated_bytes = 0;
  double setup_seconds = 0.0;
  /// One apply plus one invert: median and interquartile range.
  double median_seconds = 0.0;
  double iqr_seconds = 0.0;
  int repetitions = 0;
  /// "haar", "dense-proxy" (random dense matrix of the same shape, used
  /// above the Haar limit where only the timing is of interest) or "none".
  std::string source;
  /// "ok" or "skipped: <reason>".
  std::string status;

  [[nodiscard]] bool skipped() const { return status != "ok"; }
};

/// MemAvailable from /proc/meminfo, if readable.
std::optional<std::uint64_t> available_memory_bytes();

/// Linear-interpolation quantile of an ascending sample.
double sorted_quantile(std::span<const double> sorted, double q);

std::vector<OverheadRow> transform_overhead_bench(std::span<const int> dims, int element_bytes,
                                                  int repetitions, std::uint64_t seed,
                                                  int haar_limit = 4096);

CsvTable overhead_csv(const std::vector<OverheadRow>& rows);

}  // namespace wmlab
