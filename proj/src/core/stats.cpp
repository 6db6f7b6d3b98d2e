#include "wmlab/core/stats.hpp"

#include <array>
#include <limits>
#include <numbers>
#include <string>

namespace wmlab {

double std_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double std_normal_inv_cdf(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError("std_normal_inv_cdf: p must lie in (0, 1), got " + std::to_string(p));
  }
  static constexpr std::array<double, 6> a{-3.969683028665376e+01, 2.209460984245205e+02,
                                           -2.759285104469687e+02, 1.383577518672690e+02,
                                           -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr std::array<double, 5> b{-5.447609879822406e+01, 1.615858368580409e+02,
                                           -1.556989798598866e+02, 6.680131188771972e+01,
                                           -1.328068155288572e+01};
  static constexpr std::array<double, 6> c{-7.784894002430293e-03, -3.223964580411365e-01,
                                           -2.400758277161838e+00, -2.549732539343734e+00,
                                           4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr std::array<double, 4> d{7.784695709041462e-03, 3.224671290700398e-01,
                                           2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  double x = 0.0;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log1p(-p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }

  // Halley step. In the upper tail work with the complement to keep
  // the residual accurate.
  double e = 0.0;
  if (x > 0.0) {
    e = (1.0 - p) - 0.5 * std::erfc(x / std::numbers::sqrt2);
  } else {
    e = 0.5 * std::erfc(-x / std::numbers::sqrt2) - p;
  }
  const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
  return x - u / (1.0 + 0.5 * x * u);
}

namespace {

double log_add(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

double log_pmf_half(std::int64_t t, std::int64_t k) {
  const double td = static_cast<double>(t);
  const double kd = static_cast<double>(k);
  return std::lgamma(td + 1.0) - std::lgamma(kd + 1.0) - std::lgamma(td - kd + 1.0) -
         td * std::numbers::ln2;
}

// Chernoff: P[Bin(t,1/2) >= tau] <= exp(-t KL(tau/t || 1/2)) for tau > t/2.
double log_chernoff_tail_half(std::int64_t t, std::int64_t tau) {
  const double x = static_cast<double>(tau) / static_cast<double>(t);
  if (x <= 0.5) return 0.0;
  if (x >= 1.0) return -static_cast<double>(t) * std::numbers::ln2;
  const double kl = x * std::log(2.0 * x) + (1.0 - x) * std::log(2.0 * (1.0 - x));
  return -static_cast<double>(t) * kl;
}

}  // namespace

double log_binomial_upper_tail_half(std::int64_t t, std::int64_t tau) {
  if (t < 0) throw InvalidArgument("binomial tail: t must be >= 0");
  if (tau <= 0) return 0.0;
  if (tau > t) return -std::numeric_limits<double>::infinity();
  // Sum from the top so that the small terms are accumulated first.
  double acc = -std::numeric_limits<double>::infinity();
  for (std::int64_t k = t; k >= tau; --k) acc = log_add(acc, log_pmf_half(t, k));
  return std::min(acc, 0.0);
}

double binomial_upper_tail_half(std::int64_t t, std::int64_t tau) {
  return std::exp(log_binomial_upper_tail_half(t, tau));
}

std::int64_t binomial_threshold(std::int64_t t, double alpha) {
  if (t < 1) throw InvalidArgument("binomial_threshold: t must be >= 1");
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw InvalidArgument("binomial_threshold: alpha must lie in (0, 1)");
  }
  const double log_alpha = std::log(alpha);
  if (t > kExactBinomialLimit) {
    std::int64_t tau = t / 2 + 1;
    while (tau <= t && log_chernoff_tail_half(t, tau) > log_alpha) ++tau;
    return tau;
  }
  double tail = -std::numeric_limits<double>::infinity();  // P[X >= t + 1]
  for (std::int64_t tau = t; tau >= 0; --tau) {
    tail = log_add(tail, log_pmf_half(t, tau));
    if (tail > log_alpha) return tau + 1;
  }
  return 0;  // unreachable: the full tail is 1 > alpha
}

double ks_normal_stat(std::span<const double> sample) {
  return ks_statistic(sample, [](double x) { return std_normal_cdf(x); });
}

double ks_two_sample_stat(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw InvalidArgument("ks_two_sample_stat: empty sample");
  std::vector<double> x(a.begin(), a.end());
  std::vector<double> y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double nx = static_cast<double>(x.size());
  const double ny = static_cast<double>(y.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] <= v) ++i;
    while (j < y.size() && y[j] <= v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
  }
  return d;
}

namespace {
double kolmogorov_c(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("KS: alpha must lie in (0, 1)");
  return std::sqrt(-0.5 * std::log(alpha / 2.0));
}
}  // namespace

double ks_critical_value(std::size_t n, double alpha) {
  if (n == 0) throw InvalidArgument("ks_critical_value: n must be >= 1");
  return kolmogorov_c(alpha) / std::sqrt(static_cast<double>(n));
}

double ks_two_sample_critical_value(std::size_t n, std::size_t m, double alpha) {
  if (n == 0 || m == 0) throw InvalidArgument("ks_two_sample_critical_value: empty sample");
  const double nd = static_cast<double>(n);
  const double md = static_cast<double>(m);
  return kolmogorov_c(alpha) * std::sqrt((nd + md) / (nd * md));
}

double two_sided_z(double confidence) {
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw InvalidArgument("confidence must lie in (0, 1)");
  }
  return std_normal_inv_cdf(0.5 + 0.5 * confidence);
}

Interval wilson_interval(std::int64_t successes, std::int64_t trials, double confidence) {
  if (trials < 1) throw InvalidArgument("wilson_interval: trials must be >= 1");
  if (successes < 0 || successes > trials) {
    throw InvalidArgument("wilson_interval: successes out of range");
  }
  const double z = two_sided_z(confidence);
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double center = (p + z2 / (2.0 * n)) / (1.0 + z2 / n);
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / (1.0 + z2 / n);
  Interval ci{std::max(0.0, center - half), std::min(1.0, center + half)};
  // Pin the boundaries exactly; the closed form can land an ulp away.
  if (successes == 0) ci.low = 0.0;
  if (successes == trials) ci.high = 1.0;
  return ci;
}

Interval newcombe_difference_interval(std::int64_t x1, std::int64_t n1, std::int64_t x2,
                                      std::int64_t n2, double confidence) {
  const Interval w1 = wilson_interval(x1, n1, confidence);
  const Interval w2 = wilson_interval(x2, n2, confidence);
  const double p1 = static_cast<double>(x1) / static_cast<double>(n1);
  const double p2 = static_cast<double>(x2) / static_cast<double>(n2);
  const double diff = p1 - p2;
  const double lo = std::sqrt((p1 - w1.low) * (p1 - w1.low) + (w2.high - p2) * (w2.high - p2));
  const double hi = std::sqrt((w1.high - p1) * (w1.high - p1) + (p2 - w2.low) * (p2 - w2.low));
  return {diff - lo, diff + hi};
}

MeanEstimate mean_estimate(std::span<const double> values) {
  MeanEstimate est;
  est.n = values.size();
  if (values.empty()) return est;
  double sum = 0.0;
  for (double v : values) sum += v;
  est.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - est.mean) * (v - est.mean);
    const double var = ss / static_cast<double>(values.size() - 1);
    est.std_error = std::sqrt(var / static_cast<double>(values.size()));
  }
  return est;
}

}  // namespace wmlab
