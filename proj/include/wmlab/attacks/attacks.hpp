#pragma once

// Removal adversaries on a latent starting point under an l2 budget.
//
//   whitenoise_attack      s + tau * g / |g|,  g ~ N(0, I)
//   stealthy_attack        negate the smallest-|s_i| coordinates while
//                          sum 4 s_i^2 <= eps^2 (each flip moves s by 2|s_i|)
//   min_distortion_attack  set the smallest-|s_i| coordinates to
//                          -(gamma / i0) sign(s_i) while sum s_i^2 <= eps^2
//
// The stealthy attack keeps |s_i| for every i, so a Gaussian input stays
// Gaussian coordinate-wise. The minimal-distortion attack does not.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <Eigen/Core>

#include "wmlab/core/errors.hpp"
#include "wmlab/core/latent.hpp"
#include "wmlab/core/rng.hpp"

namespace wmlab {

struct AttackBudget {
  double epsilon = 0.0;
  double gamma = 0.0;

  void validate() const {
    if (!(epsilon >= 0.0)) throw InvalidArgument("attack budget: epsilon must be >= 0");
    if (!(gamma >= 0.0)) throw InvalidArgument("attack budget: gamma must be >= 0");
  }
};

template <typename Scalar>
struct AttackOutcome {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> perturbed;
  Scalar realized_l2 = 0;
  Eigen::Index flipped_count = 0;
  /// Number of coordinates the attack selected (i0); whitenoise reports 0.
  Eigen::Index selected = 0;
  /// Set when the attack could not act (min-distortion with i0 = 0).
  bool no_op = false;
};

template <typename DerivedA, typename DerivedB>
Eigen::Index sign_changes(const Eigen::MatrixBase<DerivedA>& a,
                          const Eigen::MatrixBase<DerivedB>& b) {
  require_same_dim(a.size(), b.size(), "sign_changes");
  Eigen::Index n = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i) n += ((a[i] > 0) != (b[i] > 0));
  return n;
}

/// Fraction of sign bits that differ between `original` and `attacked`.
template <typename DerivedA, typename DerivedB>
double bits_flipped(const Eigen::MatrixBase<DerivedA>& original,
                    const Eigen::MatrixBase<DerivedB>& attacked) {
  require_same_dim(original.size(), attacked.size(), "bits_flipped");
  if (original.size() == 0) return 0.0;
  return static_cast<double>(sign_changes(original, attacked)) /
         static_cast<double>(original.size());
}

/// Permutation sorting |s| ascending; ties keep ascending index order.
template <typename Derived>
std::vector<Eigen::Index> magnitude_order(const Eigen::MatrixBase<Derived>& s) {
  std::vector<Eigen::Index> order(static_cast<std::size_t>(s.size()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return std::abs(s[a]) < std::abs(s[b]);
  });
  return order;
}

template <typename Derived>
AttackOutcome<typename Derived::Scalar> whitenoise_attack(const Eigen::MatrixBase<Derived>& s,
                                                          typename Derived::Scalar tau,
                                                          Rng& rng) {
  using Scalar = typename Derived::Scalar;
  if (!(tau >= 0)) throw InvalidArgument("whitenoise_attack: tau must be >= 0");
  if (s.size() < 1) throw InvalidArgument("whitenoise_attack: empty latent");
  AttackOutcome<Scalar> out;
  if (tau == 0) {
    out.perturbed = s;
    return out;
  }
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> g(s.size());
  for (Eigen::Index i = 0; i < g.size(); ++i) g[i] = static_cast<Scalar>(rng.gaussian());
  out.perturbed = s + tau * normalize(g);
  out.realized_l2 = (out.perturbed - s).norm();
  out.flipped_count = sign_changes(s, out.perturbed);
  return out;
}

template <typename Derived>
AttackOutcome<typename Derived::Scalar> whitenoise_attack(const Eigen::MatrixBase<Derived>& s,
                                                          typename Derived::Scalar tau,
                                                          const RngSeed& seed) {
  Rng rng(seed);
  return whitenoise_attack(s, tau, rng);
}

namespace detail {

/// Largest k such that sum_{i<k} cost * s_{order[i]}^2 <= eps^2.
template <typename Derived>
Eigen::Index greedy_prefix(const Eigen::MatrixBase<Derived>& s,
                           const std::vector<Eigen::Index>& order, double cost, double eps) {
  const double budget = eps * eps;
  double acc = 0.0;
  Eigen::Index k = 0;
  for (auto idx : order) {
    const double v = static_cast<double>(s[idx]);
    const double next = acc + cost * v * v;
    if (next > budget) break;
    acc = next;
    ++k;
  }
  return k;
}

}  // namespace detail

template <typename Derived>
AttackOutcome<typename Derived::Scalar> stealthy_attack(const Eigen::MatrixBase<Derived>& s,
                                                        typename Derived::Scalar epsilon) {
  using Scalar = typename Derived::Scalar;
  if (!(epsilon >= 0)) throw InvalidArgument("stealthy_attack: epsilon must be >= 0");
  const auto order = magnitude_order(s);
  Eigen::Index i0 = detail::greedy_prefix(s, order, 4.0, static_cast<double>(epsilon));

  AttackOutcome<Scalar> out;
  out.perturbed = s;
  for (Eigen::Index k = 0; k < i0; ++k) out.perturbed[order[k]] = -s[order[k]];
  out.realized_l2 = (out.perturbed - s).norm();
  // The prefix sum and the norm round differently; drop flips until the
  // norm as computed here also respects the budget.
  while (i0 > 0 && out.realized_l2 > epsilon) {
    --i0;
    out.perturbed[order[i0]] = s[order[i0]];
    out.realized_l2 = (out.perturbed - s).norm();
  }
  out.selected = i0;
  out.flipped_count = sign_changes(s, out.perturbed);
  return out;
}

template <typename Derived>
AttackOutcome<typename Derived::Scalar> min_distortion_attack(
    const Eigen::MatrixBase<Derived>& s, typename Derived::Scalar epsilon,
    typename Derived::Scalar gamma) {
  using Scalar = typename Derived::Scalar;
  if (!(epsilon >= 0)) throw InvalidArgument("min_distortion_attack: epsilon must be >= 0");
  if (!(gamma > 0)) throw InvalidArgument("min_distortion_attack: gamma must be > 0");
  const auto order = magnitude_order(s);
  const Eigen::Index i0 = detail::greedy_prefix(s, order, 1.0, static_cast<double>(epsilon));

  AttackOutcome<Scalar> out;
  out.perturbed = s;
  out.selected = i0;
  if (i0 == 0) {
    out.no_op = true;
    return out;
  }
  const Scalar level = gamma / static_cast<Scalar>(i0);
  for (Eigen::Index k = 0; k < i0; ++k) {
    const auto idx = order[k];
    out.perturbed[idx] = s[idx] > 0 ? -level : level;
  }
  out.realized_l2 = (out.perturbed - s).norm();
  out.flipped_count = sign_changes(s, out.perturbed);
  return out;
}

}  // namespace wmlab
