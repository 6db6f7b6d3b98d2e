#include "wmlab/defense/enhanced_scheme.hpp"

namespace wmlab {

EnhancedScheme::EnhancedScheme(SchemePtr base, OrthonormalTransform<double> transform)
    : base_(std::move(base)), transform_(std::move(transform)) {
  if (!base_) throw InvalidArgument("EnhancedScheme: null base scheme");
  require_same_dim(transform_.dim(), base_->dim(), "EnhancedScheme");
  name_ = "haar+" + std::string(base_->name());
}

LatentPoint EnhancedScheme::sample(const RngSeed& seed) const {
  return transform_.apply(base_->sample(seed));
}

DetectorVerdict EnhancedScheme::detect(const Eigen::Ref<const Eigen::VectorXd>& y) const {
  return base_->detect(transform_.invert(y));
}

LatentPoint EnhancedScheme::to_base(const Eigen::Ref<const Eigen::VectorXd>& y) const {
  return base_->to_base(transform_.invert(y));
}

}  // namespace wmlab
