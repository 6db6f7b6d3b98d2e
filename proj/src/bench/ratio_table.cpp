#include "wmlab/bench/ratio_table.hpp"

#include "wmlab/core/errors.hpp"

namespace wmlab {

std::optional<double> interpolate_epsilon(std::span<const double> epsilons,
                                          std::span<const double> flips, double target) {
  if (epsilons.size() != flips.size()) throw DimensionMismatch("interpolate_epsilon: size mismatch");
  if (epsilons.empty()) throw InvalidArgument("interpolate_epsilon: empty curve");
  for (std::size_t k = 1; k < epsilons.size(); ++k) {
    if (!(epsilons[k] > epsilons[k - 1])) {
      throw InvalidArgument("interpolate_epsilon: epsilon grid must be strictly increasing");
    }
    if (flips[k] < flips[k - 1]) {
      throw InvalidArgument("interpolate_epsilon: flip curve is not monotone at epsilon = " +
                            format_number(epsilons[k]));
    }
  }
  if (target < flips.front()) return std::nullopt;
  for (std::size_t k = 0; k < epsilons.size(); ++k) {
    if (flips[k] < target) continue;
    if (flips[k] == target || k == 0) return epsilons[k];
    const double f = (target - flips[k - 1]) / (flips[k] - flips[k - 1]);
    return epsilons[k - 1] + f * (epsilons[k] - epsilons[k - 1]);
  }
  return std::nullopt;
}

namespace {

struct Curve {
  std::vector<double> eps;
  std::vector<double> flips;
};

Curve extract(const CsvTable& t, const std::string& adversary) {
  const auto ca = t.column_index("adversary");
  const auto ce = t.column_index("epsilon");
  const auto cf = t.column_index("mean_flip_fraction");
  Curve c;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    if (t.rows[r][ca] != adversary) continue;
    c.eps.push_back(t.number(r, ce));
    c.flips.push_back(t.number(r, cf));
  }
  if (c.eps.empty()) throw InvalidArgument("ratio_table: no rows for adversary '" + adversary + "'");
  return c;
}

}  // namespace

std::vector<RatioRow> ratio_table(const CsvTable& bits_csv, std::span<const double> targets,
                                  const std::string& numerator, const std::string& denominator) {
  const Curve num = extract(bits_csv, numerator);
  const Curve den = extract(bits_csv, denominator);
  std::vector<RatioRow> out;
  for (double target : targets) {
    if (!(target >= 0.0 && target <= 1.0)) {
      throw InvalidArgument("ratio_table: targets must lie in [0, 1]");
    }
    RatioRow row;
    row.target = target;
    row.numerator_epsilon = interpolate_epsilon(num.eps, num.flips, target);
    row.denominator_epsilon = interpolate_epsilon(den.eps, den.flips, target);
    if (row.numerator_epsilon && row.denominator_epsilon && *row.denominator_epsilon > 0.0) {
      row.ratio = *row.numerator_epsilon / *row.denominator_epsilon;
    }
    out.push_back(row);
  }
  return out;
}

CsvTable ratio_table_csv(const std::vector<RatioRow>& rows) {
  CsvTable t;
  t.columns = {"target_flip_fraction", "numerator_epsilon", "denominator_epsilon", "ratio"};
  auto cell = [](const std::optional<double>& v) { return v ? format_number(*v) : std::string("nan"); };
  for (const auto& r : rows) {
    t.add_row({format_number(r.target), cell(r.numerator_epsilon), cell(r.denominator_epsilon),
               cell(r.ratio)});
  }
  return t;
}

}  // namespace wmlab
