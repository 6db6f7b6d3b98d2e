#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "wmlab/core/errors.hpp"
#include "wmlab/games/removal_game.hpp"

namespace wmlab {

/// Invalid configuration. `line` is 1-based, 0 when no single line is at
/// fault. what() already carries the "source:line: " prefix.
struct ConfigError : InvalidArgument {
  ConfigError(const std::string& source, int line, const std::string& message);
  int line = 0;
};

enum class ScenarioKind {
  BitsVsDistortion,
  AsrVsDistortion,
  DefenseEqualization,
  IndDistinguishers,
  Counterexample,
  OverheadBench,
  FalseAlarmCalibration,
};

std::string_view to_string(ScenarioKind kind);
ScenarioKind parse_scenario_kind(std::string_view text);

// Config text layout:
//
//   # comment
//   [scenario]   name
//   [scheme]     codec d t w m alpha transform detector eta
//   [adversary]  kinds gamma delta1 agreement_threshold
//   [game]       trials sigma_inv seed oracle_budget samples
//   [sweep]      epsilon t_values alphas dims element_bytes repetitions
//   [output]     dir
//
// Lists are comma-separated. Unknown sections or keys are errors.
struct ScenarioConfig {
  ScenarioKind scenario = ScenarioKind::AsrVsDistortion;
  SchemeConfig scheme{};

  std::vector<AdversaryKind> adversaries{AdversaryKind::Stealthy, AdversaryKind::Whitenoise};
  double gamma = 0.02;
  double delta1 = 1e-3;
  double agreement_threshold = 0.75;

  int trials = 500;
  double sigma_inv = 0.0;
  std::uint64_t seed = 1;
  int oracle_budget = 1;
  /// Latents per cell in false_alarm_calibration.
  int samples = 10000;

  std::vector<double> epsilons{1.0, 2.0, 4.0, 8.0};
  /// Parity-check counts swept by asr_vs_distortion; empty = scheme t only.
  std::vector<int> t_values;
  std::vector<double> alphas{0.1, 0.01};
  std::vector<int> dims{1024, 4096};
  int element_bytes = 8;
  int repetitions = 5;

  std::string output_dir = "results";

  /// Fully resolved config in the same text format; parses back to an
  /// equal config.
  [[nodiscard]] std::string to_text() const;
};

ScenarioConfig parse_scenario_config(std::string_view text, const std::string& source = "<config>");
ScenarioConfig load_scenario_config(const std::string& path);

}  // namespace wmlab
