#include "wmlab/games/channel.hpp"

#include <cmath>
#include <numbers>

#include "wmlab/core/errors.hpp"

namespace wmlab {

LatentPoint inversion_channel(const Eigen::Ref<const Eigen::VectorXd>& x, double sigma_inv,
                              const RngSeed& seed) {
  if (!(sigma_inv >= 0.0) || !std::isfinite(sigma_inv)) {
    throw InvalidArgument("inversion_channel: sigma_inv must be finite and >= 0");
  }
  if (sigma_inv == 0.0) return x;
  Rng rng(seed);
  LatentPoint out(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) out[i] = x[i] + sigma_inv * rng.gaussian();
  return out;
}

double channel_flip_rate(double sigma_inv) {
  if (!(sigma_inv >= 0.0)) throw InvalidArgument("channel_flip_rate: sigma_inv must be >= 0");
  return std::atan(sigma_inv) / std::numbers::pi;
}

}  // namespace wmlab
