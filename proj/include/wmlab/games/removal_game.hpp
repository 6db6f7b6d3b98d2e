#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "wmlab/codecs/prc.hpp"
#include "wmlab/codecs/gaussian_shading.hpp"
#include "wmlab/codecs/scheme.hpp"
#include "wmlab/defense/backdoor.hpp"

namespace wmlab {

enum class CodecKind { Prc, Gs };
enum class DetectorKind { Standard, Backdoored };

std::string_view to_string(CodecKind kind);
std::string_view to_string(DetectorKind kind);
CodecKind parse_codec_kind(std::string_view text);
DetectorKind parse_detector_kind(std::string_view text);

struct SchemeConfig {
  CodecKind codec = CodecKind::Prc;
  PrcParams prc{};
  GsParams gs{};
  /// Put a secret Haar transform in front of the codec.
  bool haar_transform = false;
  DetectorKind detector = DetectorKind::Standard;
  double backdoor_eta = kDefaultBackdoorEta;

  [[nodiscard]] Eigen::Index dim() const;
  [[nodiscard]] double alpha() const;
  void validate() const;
};

/// Fresh key (and transform, if configured) derived from `key_seed`.
SchemePtr build_scheme(const SchemeConfig& config, const RngSeed& key_seed);

enum class AdversaryKind { Identity, Negate, Whitenoise, Stealthy, MinDistortion, SumCodeword };

std::string_view to_string(AdversaryKind kind);
AdversaryKind parse_adversary_kind(std::string_view text);

struct AdversarySpec {
  AdversaryKind kind = AdversaryKind::Identity;
  /// tau (whitenoise), epsilon (stealthy, min_distortion) or delta1
  /// (sum_codeword); unused otherwise.
  double param = 0.0;
  /// Residual magnitude of the min-distortion attack.
  double gamma = 0.02;

  void validate() const;
};

struct ExperimentConfig {
  SchemeConfig scheme{};
  AdversarySpec adversary{};
  /// Game budget on the l2 distortion.
  double epsilon = 0.0;
  double sigma_inv = 0.0;
  int trials = 500;
  std::uint64_t master_seed = 1;

  void validate() const;
};

struct TrialRecord {
  std::int64_t trial_index = 0;
  bool watermark_detected_before = false;
  /// b = 1: the detector said 0 and the budget held.
  bool removal_success = false;
  double realized_l2 = 0.0;
  double bits_flipped_fraction = 0.0;
  bool budget_violation = false;
  /// Adversary could not act (min-distortion with nothing affordable).
  bool no_op = false;
};

/// One adversary at one game budget within a sweep.
struct SweepArm {
  AdversarySpec adversary{};
  double epsilon = 0.0;
};

struct SweepConfig {
  SchemeConfig scheme{};
  std::vector<SweepArm> arms;
  double sigma_inv = 0.0;
  int trials = 500;
  std::uint64_t master_seed = 1;

  void validate() const;
};

/// Runs every arm on the same per-trial key, sample and channel draws
/// (trial i uses RngSeed{master_seed, i}). Arm results are therefore
/// identical to running each arm alone with removal_game. Returns
/// records indexed [arm][trial].
std::vector<std::vector<TrialRecord>> removal_sweep(const SweepConfig& config, int workers = 1);

std::vector<TrialRecord> removal_game(const ExperimentConfig& config, int workers = 1);

}  // namespace wmlab
