#include "wmlab/games/estimates.hpp"

namespace wmlab {

AsrEstimate asr_estimate(std::span<const TrialRecord> records, double confidence) {
  AsrEstimate est;
  for (const auto& r : records) {
    if (r.removal_success && r.budget_violation) {
      throw InternalError("asr_estimate: success recorded on a budget violation");
    }
    if (r.budget_violation) ++est.budget_violations;
    if (!r.watermark_detected_before) {
      ++est.excluded;
      continue;
    }
    ++est.eligible;
    if (r.removal_success) ++est.successes;
  }
  if (est.eligible > 0) {
    est.asr = static_cast<double>(est.successes) / static_cast<double>(est.eligible);
    est.ci = wilson_interval(est.successes, est.eligible, confidence);
  }
  return est;
}

namespace {

Advantage make_advantage(const AsrEstimate& a, const AsrEstimate& w, double confidence) {
  if (a.eligible == 0 || w.eligible == 0) {
    throw InvalidArgument("advantage: no eligible trials");
  }
  Advantage adv;
  adv.adversary = a;
  adv.whitenoise = w;
  adv.delta = a.asr - w.asr;
  adv.ci = newcombe_difference_interval(a.successes, a.eligible, w.successes, w.eligible,
                                        confidence);
  return adv;
}

}  // namespace

Advantage advantage(std::span<const TrialRecord> records_a, std::span<const TrialRecord> records_w,
                    double confidence) {
  return make_advantage(asr_estimate(records_a, confidence), asr_estimate(records_w, confidence),
                        confidence);
}

Advantage advantage(std::span<const TrialRecord> records_a,
                    std::span<const std::vector<TrialRecord>> whitenoise_arms,
                    std::span<const double> taus, double epsilon, double confidence) {
  if (whitenoise_arms.size() != taus.size()) {
    throw DimensionMismatch("advantage: one tau per whitenoise arm required");
  }
  std::optional<std::size_t> best;
  AsrEstimate best_est;
  for (std::size_t k = 0; k < taus.size(); ++k) {
    if (!(taus[k] <= epsilon)) continue;
    const AsrEstimate est = asr_estimate(whitenoise_arms[k], confidence);
    if (!best || est.asr > best_est.asr) {
      best = k;
      best_est = est;
    }
  }
  if (!best) throw InvalidArgument("advantage: no whitenoise arm with tau <= epsilon");
  Advantage adv = make_advantage(asr_estimate(records_a, confidence), best_est, confidence);
  adv.best_tau = taus[*best];
  return adv;
}

std::vector<double> whitenoise_tau_grid(double epsilon, int points) {
  if (!(epsilon > 0.0)) throw InvalidArgument("whitenoise_tau_grid: epsilon must be > 0");
  if (points < 1) throw InvalidArgument("whitenoise_tau_grid: points must be >= 1");
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(points));
  for (int k = 1; k <= points; ++k) grid.push_back(epsilon * k / points);
  grid.back() = epsilon;
  return grid;
}

std::optional<double> first_crossing(std::span<const double> eps, std::span<const double> values,
                                     double level) {
  if (eps.size() != values.size()) throw DimensionMismatch("first_crossing: size mismatch");
  for (std::size_t k = 0; k < eps.size(); ++k) {
    if (values[k] < level) continue;
    if (k == 0) return eps[0];
    const double v0 = values[k - 1];
    const double v1 = values[k];
    const double frac = (level - v0) / (v1 - v0);
    return eps[k - 1] + frac * (eps[k] - eps[k - 1]);
  }
  return std::nullopt;
}

Crossing asr_crossing(std::span<const double> eps, std::span<const AsrEstimate> curve,
                      double level) {
  std::vector<double> mid;
  std::vector<double> lo;
  std::vector<double> hi;
  for (const auto& e : curve) {
    mid.push_back(e.asr);
    lo.push_back(e.ci.low);
    hi.push_back(e.ci.high);
  }
  Crossing c;
  c.epsilon = first_crossing(eps, mid, level);
  c.low = first_crossing(eps, hi, level);
  c.high = first_crossing(eps, lo, level);
  return c;
}

}  // namespace wmlab
