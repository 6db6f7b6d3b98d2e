#pragma once

#include <string>

#include "wmlab/codecs/scheme.hpp"
#include "wmlab/defense/orthonormal_transform.hpp"

namespace wmlab {

/// Boundary-hiding wrapper: samples are t(smp(k)), detection runs
/// det(k, t^{-1}(y)).
class EnhancedScheme final : public WatermarkScheme {
 public:
  EnhancedScheme(SchemePtr base, OrthonormalTransform<double> transform);

  std::string_view name() const override { return name_; }
  Eigen::Index dim() const override { return base_->dim(); }
  double alpha() const override { return base_->alpha(); }
  double max_statistic() const override { return base_->max_statistic(); }

  LatentPoint sample(const RngSeed& seed) const override;
  DetectorVerdict detect(const Eigen::Ref<const Eigen::VectorXd>& y) const override;
  LatentPoint to_base(const Eigen::Ref<const Eigen::VectorXd>& y) const override;

  [[nodiscard]] const WatermarkScheme& base() const { return *base_; }
  [[nodiscard]] const OrthonormalTransform<double>& transform() const { return transform_; }

 private:
  SchemePtr base_;
  OrthonormalTransform<double> transform_;
  std::string name_;
};

inline LatentPoint enhanced_sample(const EnhancedScheme& scheme, const RngSeed& seed) {
  return scheme.sample(seed);
}

inline DetectorVerdict enhanced_detect(const EnhancedScheme& scheme,
                                       const Eigen::Ref<const Eigen::VectorXd>& y) {
  return scheme.detect(y);
}

}  // namespace wmlab
