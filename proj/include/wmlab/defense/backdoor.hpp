#pragma once

// Deliberately broken detector: it declares a latent non-watermarked when
// its offset from the nearest issued latent points along the sum of two
// issued latents. A detector built this way is not well-behaved, and the
// sum-codeword attack removes the mark with a tiny perturbation.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "wmlab/codecs/scheme.hpp"

namespace wmlab {

inline constexpr std::size_t kRegistryCapacity = 64;
inline constexpr double kDefaultBackdoorEta = 1e-6;

double cosine_similarity(const Eigen::Ref<const Eigen::VectorXd>& a,
                         const Eigen::Ref<const Eigen::VectorXd>& b);

/// Index of the registry entry closest to x in l2; ties go to the lowest index.
std::size_t nearest_issued(std::span<const LatentPoint> registry,
                           const Eigen::Ref<const Eigen::VectorXd>& x);

struct BackdoorDiagnostics {
  std::optional<std::size_t> nearest;
  /// Largest pair cosine; unset when the check was skipped.
  std::optional<double> best_cosine;
  bool fired = false;
};

/// `scheme.to_base` undoes any transform; `scheme.detect` is the fallback.
/// Registry entries are pre-transform latents.
DetectorVerdict backdoored_detect(const WatermarkScheme& scheme,
                                  std::span<const LatentPoint> registry,
                                  const Eigen::Ref<const Eigen::VectorXd>& y, double eta,
                                  BackdoorDiagnostics* diagnostics = nullptr);

class BackdooredDetector {
 public:
  explicit BackdooredDetector(SchemePtr scheme, double eta = kDefaultBackdoorEta,
                              std::size_t capacity = kRegistryCapacity);

  /// Append a pre-transform watermarked latent. Throws when full.
  void register_issued(const Eigen::Ref<const Eigen::VectorXd>& w);
  /// Convenience: register the base-coordinate image of an issued latent y.
  void register_issued_output(const Eigen::Ref<const Eigen::VectorXd>& y);

  [[nodiscard]] DetectorVerdict detect(const Eigen::Ref<const Eigen::VectorXd>& y,
                                       BackdoorDiagnostics* diagnostics = nullptr) const;

  [[nodiscard]] std::size_t registry_size() const { return registry_.size(); }
  [[nodiscard]] const std::vector<LatentPoint>& registry() const { return registry_; }
  [[nodiscard]] double eta() const { return eta_; }

 private:
  SchemePtr scheme_;
  double eta_;
  std::size_t capacity_;
  std::vector<LatentPoint> registry_;
};

/// Two oracle queries w1, w2; returns target + delta1 (w1 + w2).
template <typename Oracle>
LatentPoint sum_codeword_attack(Oracle&& oracle, const Eigen::Ref<const Eigen::VectorXd>& target,
                                double delta1) {
  if (!(delta1 >= 0.0)) throw InvalidArgument("sum_codeword_attack: delta1 must be >= 0");
  const LatentPoint w1 = oracle();
  const LatentPoint w2 = oracle();
  require_same_dim(w1.size(), target.size(), "sum_codeword_attack");
  require_same_dim(w2.size(), target.size(), "sum_codeword_attack");
  return target + delta1 * (w1 + w2);
}

}  // namespace wmlab
