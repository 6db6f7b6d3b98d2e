#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "wmlab/codecs/scheme.hpp"
#include "wmlab/core/rng.hpp"

namespace wmlab {

enum class ProbeMode { Exhaustive, Sampled };

struct ProbeOptions {
  int gamma_bits = 1;
  int trials = 1;
  ProbeMode mode = ProbeMode::Exhaustive;
  /// Random flip subsets drawn per Hamming distance in sampled mode.
  int samples_per_distance = 256;
  RngSeed seed{};
};

/// Exhaustive mode is limited to d <= 32 and gamma_bits <= 3.
inline constexpr int kExhaustiveMaxDim = 32;
inline constexpr int kExhaustiveMaxGamma = 3;

struct ProbeReport {
  int gamma_bits = 0;
  ProbeMode mode = ProbeMode::Exhaustive;
  /// Indexed by Hamming distance h = 0..gamma_bits, summed over trials.
  std::vector<std::uint64_t> tested;
  std::vector<std::uint64_t> failures;

  [[nodiscard]] std::uint64_t total_tested() const;
  [[nodiscard]] std::uint64_t total_failures() const;
  [[nodiscard]] double failure_fraction() const;
  [[nodiscard]] bool passed() const { return total_failures() == 0; }
  [[nodiscard]] std::optional<int> first_failing_distance() const;
};

/// sum_{h=0}^{gamma_bits} C(d, h): sign patterns within the Hamming ball.
std::uint64_t exhaustive_pattern_count(int d, int gamma_bits);

/// Draws watermarked samples from `codec` and checks that every sign
/// pattern within `gamma_bits` flips of the sample (lifted back with the
/// sample's magnitudes) is still declared watermarked. The codec's
/// detector must read the latent directly (no secret transform in front).
ProbeReport well_behaved_probe(const WatermarkScheme& codec, const ProbeOptions& options);

}  // namespace wmlab
