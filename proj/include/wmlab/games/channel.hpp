#pragma once

#include <Eigen/Core>

#include "wmlab/core/latent.hpp"
#include "wmlab/core/rng.hpp"

namespace wmlab {

/// Additive Gaussian stand-in for imperfect inversion: x + eta with
/// eta ~ N(0, sigma^2 I). sigma = 0 is exact inversion and returns x as is.
LatentPoint inversion_channel(const Eigen::Ref<const Eigen::VectorXd>& x, double sigma_inv,
                              const RngSeed& seed);

/// Flip probability of one sign under the channel, arctan(sigma) / pi,
/// for a standard normal coordinate.
double channel_flip_rate(double sigma_inv);

}  // namespace wmlab
