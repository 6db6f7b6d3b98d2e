#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wmlab/bench/csv.hpp"

namespace wmlab {

/// epsilon at which a non-decreasing flip curve reaches `target`, by linear
/// interpolation. Unset when the target lies outside the curve's range.
/// Throws when epsilons are not strictly increasing or flips decrease.
std::optional<double> interpolate_epsilon(std::span<const double> epsilons,
                                          std::span<const double> flips, double target);

struct RatioRow {
  double target = 0.0;
  std::optional<double> numerator_epsilon;
  std::optional<double> denominator_epsilon;
  std::optional<double> ratio;
};

/// For each target flip fraction: required epsilon of `numerator` divided by
/// that of `denominator`, read from a bits_vs_distortion CSV.
std::vector<RatioRow> ratio_table(const CsvTable& bits_csv, std::span<const double> targets,
                                  const std::string& numerator = "whitenoise",
                                  const std::string& denominator = "stealthy");

CsvTable ratio_table_csv(const std::vector<RatioRow>& rows);

}  // namespace wmlab
