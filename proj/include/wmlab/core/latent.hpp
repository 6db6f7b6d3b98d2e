#pragma once

#include <cmath>

#include <Eigen/Core>

#include "wmlab/core/bitstring.hpp"
#include "wmlab/core/errors.hpp"

namespace wmlab {

/// A starting point in the latent space R^d.
using LatentPoint = Eigen::VectorXd;

template <typename Derived>
typename Derived::RealScalar l2_norm(const Eigen::MatrixBase<Derived>& x) {
  return x.norm();
}

template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> normalize(
    const Eigen::MatrixBase<Derived>& x) {
  const auto n = x.norm();
  if (!(n > 0)) throw DegenerateInput("normalize: zero vector");
  return x / n;
}

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& x) {
  return x.allFinite();
}

/// Bit i is 1 iff x_i > 0. Exact zeros map to 0.
template <typename Derived>
BitString signs(const Eigen::MatrixBase<Derived>& x) {
  BitString out(static_cast<std::size_t>(x.size()));
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x[i] > 0) out.set(static_cast<std::size_t>(i), true);
  }
  return out;
}

/// Inverse of `signs` given magnitudes: x_i = (b_i ? +1 : -1) * |magnitudes_i|.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> lift_signs(
    const BitString& bits, const Eigen::MatrixBase<Derived>& magnitudes) {
  require_same_dim(static_cast<long long>(bits.size()), magnitudes.size(), "lift_signs");
  Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> x(magnitudes.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const auto m = std::abs(magnitudes[i]);
    x[i] = bits[static_cast<std::size_t>(i)] ? m : -m;
  }
  return x;
}

}  // namespace wmlab
