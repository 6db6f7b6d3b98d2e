#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "wmlab/core/errors.hpp"

namespace wmlab {

struct Interval {
  double low = 0.0;
  double high = 0.0;

  [[nodiscard]] bool contains(double v) const { return low <= v && v <= high; }
  [[nodiscard]] double width() const { return high - low; }
};

double std_normal_cdf(double x);

/// Phi^{-1}(p) for 0 < p < 1, absolute error well below 1e-8.
/// Rational approximation (Acklam) refined by one Halley step on erfc.
double std_normal_inv_cdf(double p);

/// log P[Bin(t, 1/2) >= tau], exact summation in log space.
double log_binomial_upper_tail_half(std::int64_t t, std::int64_t tau);
double binomial_upper_tail_half(std::int64_t t, std::int64_t tau);

/// Smallest tau with P[Bin(t, 1/2) >= tau] <= alpha. May return t + 1
/// (never fires) when even the all-ones tail 2^-t exceeds alpha.
/// Exact for t <= 1e5; Chernoff bound above that.
std::int64_t binomial_threshold(std::int64_t t, double alpha);

inline constexpr std::int64_t kExactBinomialLimit = 100000;

/// One-sample Kolmogorov-Smirnov statistic sup|F_n - F| against `cdf`.
template <typename Cdf>
double ks_statistic(std::span<const double> sample, Cdf&& cdf) {
  if (sample.empty()) throw InvalidArgument("ks_statistic: empty sample");
  std::vector<double> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

double ks_normal_stat(std::span<const double> sample);

/// Two-sample KS statistic sup|F_a - F_b|.
double ks_two_sample_stat(std::span<const double> a, std::span<const double> b);

/// Asymptotic critical values: reject when the statistic exceeds them.
/// c(alpha) = sqrt(-ln(alpha / 2) / 2); c(0.01) ~ 1.628.
double ks_critical_value(std::size_t n, double alpha);
double ks_two_sample_critical_value(std::size_t n, std::size_t m, double alpha);

/// Wilson score interval for a binomial proportion.
Interval wilson_interval(std::int64_t successes, std::int64_t trials, double confidence);

/// Newcombe hybrid score interval for p1 - p2 (independent samples),
/// built from the two Wilson intervals.
Interval newcombe_difference_interval(std::int64_t x1, std::int64_t n1, std::int64_t x2,
                                      std::int64_t n2, double confidence);

/// Two-sided normal quantile z with P[|Z| <= z] = confidence.
double two_sided_z(double confidence);

struct MeanEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t n = 0;

  [[nodiscard]] Interval ci(double z) const {
    return {mean - z * std_error, mean + z * std_error};
  }
};

/// Sample mean with the standard error of the mean (n - 1 denominator).
MeanEstimate mean_estimate(std::span<const double> values);

}  // namespace wmlab
