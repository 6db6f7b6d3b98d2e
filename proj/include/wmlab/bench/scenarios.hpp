#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "wmlab/bench/config.hpp"
#include "wmlab/bench/csv.hpp"
#include "wmlab/core/stats.hpp"

namespace wmlab {

inline constexpr int kSummarySchemaVersion = 1;

/// Column set of the bits_vs_distortion CSV.
inline const std::vector<std::string> kBitsColumns{
    "adversary", "epsilon", "mean_flip_fraction", "ci_low", "ci_high", "mean_realized_l2"};

struct FlipPoint {
  AdversaryKind adversary = AdversaryKind::Stealthy;
  double epsilon = 0.0;
  MeanEstimate flip{};
  MeanEstimate realized{};
};

/// Flip fraction of each attack on fresh N(0, I_d) starting points.
/// Whitenoise runs at tau = epsilon. Trial i draws from RngSeed{seed, i}.
std::vector<FlipPoint> bits_vs_distortion(int d, std::span<const AdversaryKind> adversaries,
                                          std::span<const double> epsilons, int trials,
                                          double gamma, std::uint64_t seed, int workers = 1);

/// Rows in adversary-major order; CI = mean +/- z SE.
CsvTable bits_csv(const std::vector<FlipPoint>& points, double confidence = 0.95);

struct FalseAlarm {
  std::int64_t alarms = 0;
  std::int64_t samples = 0;
  [[nodiscard]] double rate() const {
    return samples == 0 ? 0.0 : static_cast<double>(alarms) / static_cast<double>(samples);
  }
};

/// Detection on `samples` standard-normal latents, a fresh key per latent.
FalseAlarm false_alarm_rate(const SchemeConfig& scheme, int samples, std::uint64_t seed,
                            int workers = 1);

/// alpha + 3 sqrt(alpha (1 - alpha) / n).
double false_alarm_bound(double alpha, std::int64_t n);

struct RunOptions {
  std::optional<std::uint64_t> seed;
  int workers = 0;
  std::optional<std::string> out_dir;
};

struct ScenarioResult {
  std::string csv_path;
  std::string json_path;
  std::vector<std::string> plot_files;
  CsvTable csv;
  nlohmann::json summary;
};

/// Runs the scenario and writes <out>/<name>.csv, <out>/<name>.json and
/// plot data files. Output is a pure function of config and seed, except
/// the timing columns of overhead_bench.
ScenarioResult run_scenario(ScenarioConfig config, const RunOptions& options);

}  // namespace wmlab
