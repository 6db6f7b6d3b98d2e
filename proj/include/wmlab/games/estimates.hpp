#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "wmlab/core/stats.hpp"
#include "wmlab/games/removal_game.hpp"

namespace wmlab {

struct AsrEstimate {
  double asr = 0.0;
  Interval ci{0.0, 1.0};
  std::int64_t successes = 0;
  /// Trials whose clean sample was detected; the ASR denominator.
  std::int64_t eligible = 0;
  /// Trials dropped because the clean sample was already undetected.
  std::int64_t excluded = 0;
  std::int64_t budget_violations = 0;
};

/// Success fraction over eligible trials with a Wilson interval. With no
/// eligible trials the estimate is 0 with the vacuous interval [0, 1].
AsrEstimate asr_estimate(std::span<const TrialRecord> records, double confidence = 0.95);

struct Advantage {
  double delta = 0.0;
  /// Newcombe hybrid-score interval for the difference of proportions.
  Interval ci{};
  AsrEstimate adversary{};
  AsrEstimate whitenoise{};
  /// tau of the best whitenoise arm when maximizing over a grid.
  std::optional<double> best_tau;
};

Advantage advantage(std::span<const TrialRecord> records_a, std::span<const TrialRecord> records_w,
                    double confidence = 0.95);

/// delta against the best whitenoise arm with tau <= epsilon.
Advantage advantage(std::span<const TrialRecord> records_a,
                    std::span<const std::vector<TrialRecord>> whitenoise_arms,
                    std::span<const double> taus, double epsilon, double confidence = 0.95);

/// k * epsilon / points for k = 1..points.
std::vector<double> whitenoise_tau_grid(double epsilon, int points = 16);

struct Crossing {
  std::optional<double> epsilon;
  /// From the upper CI curve (crosses first) and the lower CI curve.
  std::optional<double> low;
  std::optional<double> high;
};

/// Where an ASR curve first reaches `level`, by linear interpolation
/// between grid points. Unset when the curve stays below the level.
std::optional<double> first_crossing(std::span<const double> eps, std::span<const double> values,
                                     double level);
Crossing asr_crossing(std::span<const double> eps, std::span<const AsrEstimate> curve,
                      double level = 0.5);

}  // namespace wmlab
