#pragma once

#include <memory>
#include <string_view>

#include <Eigen/Core>

#include "wmlab/codecs/gaussian_shading.hpp"
#include "wmlab/codecs/prc.hpp"
#include "wmlab/codecs/verdict.hpp"
#include "wmlab/core/latent.hpp"
#include "wmlab/core/rng.hpp"

namespace wmlab {

/// A keyed watermarking scheme <smp, det> as seen by the games.
class WatermarkScheme {
 public:
  virtual ~WatermarkScheme() = default;

  [[nodiscard]] virtual std::string_view name() const = 0;
  [[nodiscard]] virtual Eigen::Index dim() const = 0;
  [[nodiscard]] virtual double alpha() const = 0;

  [[nodiscard]] virtual LatentPoint sample(const RngSeed& seed) const = 0;
  [[nodiscard]] virtual DetectorVerdict detect(
      const Eigen::Ref<const Eigen::VectorXd>& x) const = 0;

  /// Latent in the coordinates the base codec reads. Identity unless a
  /// secret transform sits in front of the codec.
  [[nodiscard]] virtual LatentPoint to_base(const Eigen::Ref<const Eigen::VectorXd>& y) const {
    return y;
  }

  /// Upper bound of the detection statistic (t for PRC, m for GS).
  [[nodiscard]] virtual double max_statistic() const = 0;
};

using SchemePtr = std::shared_ptr<const WatermarkScheme>;

class PrcScheme final : public WatermarkScheme {
 public:
  explicit PrcScheme(PrcKey key) : key_(std::move(key)) {}

  std::string_view name() const override { return "prc"; }
  Eigen::Index dim() const override { return key_.d(); }
  double alpha() const override { return key_.alpha(); }
  LatentPoint sample(const RngSeed& seed) const override { return prc_sample(key_, seed); }
  DetectorVerdict detect(const Eigen::Ref<const Eigen::VectorXd>& x) const override {
    return prc_detect(key_, x);
  }
  double max_statistic() const override { return key_.t(); }

  [[nodiscard]] const PrcKey& key() const { return key_; }

 private:
  PrcKey key_;
};

class GsScheme final : public WatermarkScheme {
 public:
  explicit GsScheme(GsKey key) : key_(std::move(key)) {}

  std::string_view name() const override { return "gs"; }
  Eigen::Index dim() const override { return key_.d(); }
  double alpha() const override { return key_.alpha(); }
  LatentPoint sample(const RngSeed& seed) const override { return gs_sample(key_, seed); }
  DetectorVerdict detect(const Eigen::Ref<const Eigen::VectorXd>& x) const override {
    return gs_detect(key_, x);
  }
  double max_statistic() const override { return key_.m(); }

  [[nodiscard]] const GsKey& key() const { return key_; }

 private:
  GsKey key_;
};

}  // namespace wmlab
