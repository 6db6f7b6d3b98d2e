#include "wmlab/bench/overhead.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "wmlab/core/errors.hpp"
#include "wmlab/defense/orthonormal_transform.hpp"

namespace wmlab {

std::optional<std::uint64_t> available_memory_bytes() {
  std::ifstream in("/proc/meminfo");
  std::string key;
  std::uint64_t value = 0;
  std::string unit;
  while (in >> key >> value >> unit) {
    if (key == "MemAvailable:") return value * 1024;
  }
  return std::nullopt;
}

double sorted_quantile(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw InvalidArgument("sorted_quantile: empty sample");
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

template <typename Scalar>
void measure(OverheadRow& row, int repetitions, std::uint64_t seed, int haar_limit) {
  using Matrix = typename OrthonormalTransform<Scalar>::Matrix;
  using Vector = typename OrthonormalTransform<Scalar>::Vector;
  const RngSeed base{seed, static_cast<std::uint64_t>(row.d)};

  const auto t0 = Clock::now();
  OrthonormalTransform<Scalar> transform;
  if (row.d <= haar_limit) {
    transform = haar_sample<Scalar>(row.d, base.derive(StreamTag::Transform));
    row.source = "haar";
  } else {
    Rng rng(base.derive(StreamTag::Transform));
    Matrix m(row.d, row.d);
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = static_cast<Scalar>(rng.gaussian());
    transform = OrthonormalTransform<Scalar>(std::move(m));
    row.source = "dense-proxy";
  }
  row.setup_seconds = seconds_since(t0);
  row.allocated_bytes = transform.storage_bytes();

  Rng rng(base.derive(StreamTag::Sample));
  Vector x(row.d);
  for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = static_cast<Scalar>(rng.gaussian());
  std::vector<double> times;
  volatile double sink = 0.0;
  for (int r = 0; r < repetitions; ++r) {
    const auto start = Clock::now();
    const Vector y = transform.apply(x);
    const Vector z = transform.invert(y);
    times.push_back(seconds_since(start));
    sink = sink + static_cast<double>(z[0]);
  }
  std::sort(times.begin(), times.end());
  row.median_seconds = sorted_quantile(times, 0.5);
  row.iqr_seconds = sorted_quantile(times, 0.75) - sorted_quantile(times, 0.25);
  row.repetitions = repetitions;
  row.status = "ok";
}

}  // namespace

std::vector<OverheadRow> transform_overhead_bench(std::span<const int> dims, int element_bytes,
                                                  int repetitions, std::uint64_t seed,
                                                  int haar_limit) {
  if (element_bytes != 4 && element_bytes != 8) {
    throw InvalidArgument("transform_overhead_bench: element_bytes must be 4 or 8");
  }
  if (repetitions < 1) throw InvalidArgument("transform_overhead_bench: repetitions must be >= 1");
  std::vector<OverheadRow> rows;
  for (int d : dims) {
    if (d < 1) throw InvalidArgument("transform_overhead_bench: dims must be >= 1");
    OverheadRow row;
    row.d = d;
    row.element_bytes = element_bytes;
    row.storage_bytes = transform_storage_bytes(static_cast<std::uint64_t>(d),
                                                static_cast<std::uint64_t>(element_bytes));
    // Haar sampling holds the Gaussian input, the QR factors and Q.
    const std::uint64_t peak = row.storage_bytes * (d <= haar_limit ? 3 : 1);
    const auto avail = available_memory_bytes();
    if (avail && static_cast<double>(peak) > 0.8 * static_cast<double>(*avail)) {
      std::ostringstream note;
      note << "skipped: needs ~" << peak << " bytes; " << *avail << " available";
      row.status = note.str();
      row.source = "none";
      rows.push_back(row);
      continue;
    }
    if (element_bytes == 4) {
      measure<float>(row, repetitions, seed, haar_limit);
    } else {
      measure<double>(row, repetitions, seed, haar_limit);
    }
    rows.push_back(row);
  }
  return rows;
}

CsvTable overhead_csv(const std::vector<OverheadRow>& rows) {
  CsvTable t;
  t.columns = {"d",           "element_bytes", "storage_bytes", "allocated_bytes",
               "setup_seconds", "median_seconds", "iqr_seconds", "repetitions",
               "source",        "status"};
  for (const auto& r : rows) {
    t.add_row({std::to_string(r.d), std::to_string(r.element_bytes), std::to_string(r.storage_bytes),
               std::to_string(r.allocated_bytes), format_number(r.setup_seconds),
               format_number(r.median_seconds), format_number(r.iqr_seconds),
               std::to_string(r.repetitions), r.source, r.status});
  }
  return t;
}

}  // namespace wmlab
