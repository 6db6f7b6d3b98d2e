// Acceptance run: one [PASS]/[FAIL] line per criterion, nonzero exit if any
// criterion fails. Grids and seeds come from the shipped configs where one
// exists, so these numbers match `wmlab run configs/<name>.ini`.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "wmlab/attacks/attacks.hpp"
#include "wmlab/bench/config.hpp"
#include "wmlab/bench/overhead.hpp"
#include "wmlab/bench/ratio_table.hpp"
#include "wmlab/bench/scenarios.hpp"
#include "wmlab/codecs/scheme.hpp"
#include "wmlab/core/stats.hpp"
#include "wmlab/defense/orthonormal_transform.hpp"
#include "wmlab/defense/well_behaved.hpp"
#include "wmlab/games/estimates.hpp"
#include "wmlab/games/ind_game.hpp"
#include "wmlab/games/removal_game.hpp"

using namespace wmlab;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::string fmt_opt(const std::optional<double>& v) { return v ? fmt(*v) : "none"; }

ScenarioConfig load(const std::string& name) {
  return load_scenario_config(std::string(WMLAB_CONFIG_DIR) + "/" + name + ".ini");
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

constexpr int kWorkers = 0;

// --- 1: separation at d = 16384 -------------------------------------------------
Outcome ac1() {
  const auto cfg = load("bits_vs_distortion");
  const int d = cfg.scheme.prc.d;
  const std::vector<AdversaryKind> kinds{AdversaryKind::Stealthy, AdversaryKind::Whitenoise};
  const auto t0 = std::chrono::steady_clock::now();
  const auto points = bits_vs_distortion(d, kinds, cfg.epsilons, cfg.trials, cfg.gamma, cfg.seed, kWorkers);
  const double elapsed = seconds_since(t0);

  int misses = 0;
  std::string worst;
  double worst_z = 0.0;
  for (const auto& p : points) {
    if (p.adversary != AdversaryKind::Whitenoise) continue;
    const double closed = std::atan(p.epsilon / std::sqrt(static_cast<double>(d))) / std::numbers::pi;
    const double z = std::abs(p.flip.mean - closed) / p.flip.std_error;
    if (z > worst_z) {
      worst_z = z;
      worst = fmt(p.epsilon);
    }
    misses += z > 3.0;
  }
  const auto table = bits_csv(points);
  const std::vector<double> target{0.05};
  const auto row = ratio_table(table, target).front();
  const bool stealthy_ok = row.denominator_epsilon && *row.denominator_epsilon <= 3.5;
  const bool ratio_ok = row.ratio && *row.ratio >= 5.0;
  const bool time_ok = elapsed < 120.0;
  return {stealthy_ok && ratio_ok && misses == 0 && time_ok,
          "stealthy eps@5% = " + fmt_opt(row.denominator_epsilon) + " (<= 3.5), whitenoise eps@5% = " +
              fmt_opt(row.numerator_epsilon) + ", ratio = " + fmt_opt(row.ratio) +
              " (>= 5), whitenoise points outside 3 SE of arctan(tau/sqrt d)/pi: " +
              std::to_string(misses) + " (max |z| " + fmt(worst_z, 3) + " at tau " + worst + "), " +
              fmt(elapsed, 3) + " s (< 120)"};
}

// --- 2: whitenoise closed form at tau = 45 --------------------------------------
Outcome ac2() {
  const int d = 16384;
  const int trials = 200;
  std::vector<double> per_trial;
  for (int i = 0; i < trials; ++i) {
    const RngSeed seed{20240602, static_cast<std::uint64_t>(i)};
    const auto s = sample_std_gauss(d, seed.derive(StreamTag::Sample));
    const auto out = whitenoise_attack(s, 45.0, seed.derive(StreamTag::Attack));
    per_trial.push_back(static_cast<double>(out.flipped_count) / d);
  }
  const auto est = mean_estimate(per_trial);
  const double closed = std::atan(45.0 / 128.0) / std::numbers::pi;
  const bool ok = std::abs(est.mean - closed) <= 3.0 * est.std_error;
  return {ok, "flip fraction " + fmt(est.mean, 6) + " vs closed form " + fmt(closed, 6) + " +/- 3 SE (" +
                  fmt(3.0 * est.std_error, 3) + ") over " + std::to_string(trials) + " x " +
                  std::to_string(d) + " coordinates"};
}

// --- 3: ASR crossing order across t ---------------------------------------------
Outcome ac3() {
  const auto cfg = load("asr_vs_distortion");
  std::vector<Crossing> stealthy;
  std::vector<Crossing> white;
  bool order_ok = true;
  std::string detail;
  for (int t : cfg.t_values) {
    SweepConfig sweep;
    sweep.scheme = cfg.scheme;
    sweep.scheme.prc.t = t;
    sweep.trials = cfg.trials;
    sweep.sigma_inv = cfg.sigma_inv;
    sweep.master_seed = cfg.seed;
    for (double e : cfg.epsilons) sweep.arms.push_back({AdversarySpec{AdversaryKind::Stealthy, e, cfg.gamma}, e});
    for (double e : cfg.epsilons) sweep.arms.push_back({AdversarySpec{AdversaryKind::Whitenoise, e, cfg.gamma}, e});
    const auto rec = removal_sweep(sweep, kWorkers);
    const std::size_t n = cfg.epsilons.size();
    std::vector<AsrEstimate> cs;
    std::vector<AsrEstimate> cw;
    for (std::size_t k = 0; k < n; ++k) {
      cs.push_back(asr_estimate(rec[k]));
      cw.push_back(asr_estimate(rec[n + k]));
    }
    stealthy.push_back(asr_crossing(cfg.epsilons, cs));
    white.push_back(asr_crossing(cfg.epsilons, cw));
    const auto& s = stealthy.back();
    const auto& w = white.back();
    const bool separated = s.epsilon && w.epsilon && s.high && w.low && *s.epsilon < *w.epsilon && *s.high < *w.low;
    order_ok = order_ok && separated;
    detail += "t=" + std::to_string(t) + ": stealthy " + fmt_opt(s.epsilon) + " [" + fmt_opt(s.low) + ", " +
              fmt_opt(s.high) + "] vs whitenoise " + fmt_opt(w.epsilon) + " [" + fmt_opt(w.low) + ", " +
              fmt_opt(w.high) + "]" + (separated ? "" : " (overlap)") + "; ";
  }
  // Smaller t must need a larger removal epsilon, for both attacks.
  bool trend_ok = true;
  for (std::size_t i = 1; i < cfg.t_values.size(); ++i) {
    for (const auto* curve : {&stealthy, &white}) {
      const auto& smaller_t = (*curve)[i - 1].epsilon;
      const auto& larger_t = (*curve)[i].epsilon;
      trend_ok = trend_ok && smaller_t && larger_t && *smaller_t > *larger_t;
    }
  }
  detail += std::string("ordering with disjoint 95% CIs: ") + (order_ok ? "holds" : "violated") +
            "; smaller t needs larger eps: " + (trend_ok ? "holds" : "violated (crossings grow with t)");
  return {order_ok && trend_ok, detail};
}

// --- 4: defended equalization ----------------------------------------------------
Outcome ac4() {
  const auto cfg = load("defense_equalization");
  SweepConfig sweep;
  sweep.scheme = cfg.scheme;
  sweep.scheme.haar_transform = true;
  sweep.trials = cfg.trials;
  sweep.sigma_inv = 0.0;
  sweep.master_seed = cfg.seed;
  for (double e : cfg.epsilons) {
    sweep.arms.push_back({AdversarySpec{AdversaryKind::Stealthy, e, cfg.gamma}, e});
    sweep.arms.push_back({AdversarySpec{AdversaryKind::Whitenoise, e, cfg.gamma}, e});
  }
  const auto rec = removal_sweep(sweep, kWorkers);
  int inside = 0;
  std::string detail;
  for (std::size_t k = 0; k < cfg.epsilons.size(); ++k) {
    const auto adv = advantage(rec[2 * k], rec[2 * k + 1]);
    const bool ok = adv.ci.contains(0.0);
    inside += ok;
    detail += "eps " + fmt(cfg.epsilons[k]) + ": delta " + fmt(adv.delta, 3) + " [" + fmt(adv.ci.low, 3) + ", " +
              fmt(adv.ci.high, 3) + "]" + (ok ? "" : "*") + "; ";
  }
  detail += std::to_string(inside) + "/" + std::to_string(cfg.epsilons.size()) +
            " grid points with 0 inside the 95% CI, " + std::to_string(cfg.trials) + " trials each";
  return {inside == static_cast<int>(cfg.epsilons.size()) && cfg.epsilons.size() == 8, detail};
}

// --- 5: backdoored detector gap -------------------------------------------------
Outcome ac5() {
  const auto cfg = load("counterexample");
  const int d = cfg.scheme.prc.d;
  const double expected_norm =
      std::sqrt(2.0) * std::exp(std::lgamma((d + 1) / 2.0) - std::lgamma(d / 2.0));
  const double eps = 0.01 * expected_norm;
  SweepConfig sweep;
  sweep.scheme = cfg.scheme;
  sweep.scheme.detector = DetectorKind::Backdoored;
  sweep.trials = cfg.trials;
  sweep.master_seed = cfg.seed;
  sweep.arms = {{AdversarySpec{AdversaryKind::SumCodeword, cfg.delta1, cfg.gamma}, eps},
                {AdversarySpec{AdversaryKind::Whitenoise, eps, cfg.gamma}, eps}};
  const auto rec = removal_sweep(sweep, kWorkers);
  const auto sum = asr_estimate(rec[0]);
  const auto white = asr_estimate(rec[1]);
  double max_l2 = 0.0;
  for (const auto& r : rec[0]) max_l2 = std::max(max_l2, r.realized_l2);
  const bool ok = sum.asr >= 0.9 && white.asr <= 0.05 && sum.budget_violations == 0 && d == 1024 &&
                  cfg.trials == 200;
  return {ok, std::string(sweep.scheme.haar_transform ? "haar-defended" : "undefended") +
                  " PRC d=" + std::to_string(d) + ", eps = 0.01 E|s| = " + fmt(eps) +
                  ", delta1 = " + fmt(cfg.delta1) + " (max realized l2 " + fmt(max_l2, 3) +
                  "): ASR_sum = " + fmt(sum.asr, 3) + " (>= 0.9), ASR_whitenoise = " + fmt(white.asr, 3) +
                  " (<= 0.05), " + std::to_string(cfg.trials) + " trials"};
}

// --- 6: false alarms ------------------------------------------------------------
Outcome ac6() {
  const auto cfg = load("false_alarm_calibration");
  bool ok = true;
  std::string detail;
  for (CodecKind codec : {CodecKind::Prc, CodecKind::Gs}) {
    for (double alpha : {0.1, 0.01}) {
      SchemeConfig scheme = cfg.scheme;
      scheme.codec = codec;
      scheme.prc.alpha = alpha;
      scheme.gs.alpha = alpha;
      const auto fa = false_alarm_rate(scheme, 10000, cfg.seed, kWorkers);
      const double bound = false_alarm_bound(alpha, fa.samples);
      const bool cell = fa.rate() <= bound;
      ok = ok && cell;
      detail += std::string(to_string(codec)) + " alpha " + fmt(alpha) + ": " + fmt(fa.rate(), 4) +
                " <= " + fmt(bound, 4) + (cell ? "" : " (exceeded)") + "; ";
    }
  }
  detail += "10^4 latents per cell";
  return {ok, detail};
}

// --- 7: stealthiness contrast ---------------------------------------------------
Outcome ac7() {
  const int d = 1024;
  const int trials = 50;
  bool ok = true;
  std::string detail;
  for (double eps : {1.0, 2.0, 4.0, 8.0}) {
    std::vector<double> st;
    std::vector<double> md;
    for (int i = 0; i < trials; ++i) {
      const RngSeed seed{77, static_cast<std::uint64_t>(i)};
      const auto s = sample_std_gauss(d, seed.derive(StreamTag::Sample));
      const auto a = stealthy_attack(s, eps).perturbed;
      const auto b = min_distortion_attack(s, eps, 0.02).perturbed;
      st.insert(st.end(), a.data(), a.data() + d);
      md.insert(md.end(), b.data(), b.data() + d);
    }
    const double crit = ks_critical_value(st.size(), 0.01);
    const double ks_s = ks_normal_stat(st);
    const double ks_m = ks_normal_stat(md);
    ok = ok && ks_s < crit && ks_m > crit;
    detail += "eps " + fmt(eps) + ": stealthy D=" + fmt(ks_s, 3) + ", min-distortion D=" + fmt(ks_m, 3) + "; ";
  }
  detail += "1% critical value " + fmt(ks_critical_value(static_cast<std::size_t>(d) * trials, 0.01), 3) +
            " over " + std::to_string(trials) + " pooled trials";
  return {ok, detail};
}

// --- 8: IND distinguishers ------------------------------------------------------
Outcome ac8() {
  const auto cfg = load("ind_distinguishers");
  SchemeConfig gs = cfg.scheme;
  gs.codec = CodecKind::Gs;
  SchemeConfig prc = cfg.scheme;
  prc.codec = CodecKind::Prc;
  const auto dist = sign_correlation_distinguisher(cfg.agreement_threshold);
  const auto rg = ind_game(gs, dist, 500, 1, cfg.seed);
  const auto rp = ind_game(prc, dist, 500, 1, cfg.seed);
  const bool ok = rg.win_rate >= 0.95 && rp.ci.contains(0.5);
  return {ok, "gs win rate " + fmt(rg.win_rate, 3) + " (>= 0.95); prc win rate " + fmt(rp.win_rate, 3) +
                  " with 95% CI [" + fmt(rp.ci.low, 3) + ", " + fmt(rp.ci.high, 3) +
                  "] (must contain 0.5); 500 games each, one oracle copy"};
}

// --- 9: well-behavedness radius -------------------------------------------------
std::vector<std::uint64_t> breaking_sets(const PrcKey& key) {
  std::vector<std::uint64_t> out(4, 0);
  const int d = key.d();
  std::vector<int> flipped(static_cast<std::size_t>(d), 0);
  const int slack = key.t() - key.threshold();
  auto breaks = [&] {
    int b = 0;
    for (const auto& row : key.parity_rows()) {
      int odd = 0;
      for (auto j : row) odd ^= flipped[j];
      b += odd;
    }
    return b > slack;
  };
  for (int a = 0; a < d; ++a) {
    flipped[a] = 1;
    out[1] += breaks();
    for (int b = a + 1; b < d; ++b) {
      flipped[b] = 1;
      out[2] += breaks();
      for (int c = b + 1; c < d; ++c) {
        flipped[c] = 1;
        out[3] += breaks();
        flipped[c] = 0;
      }
      flipped[b] = 0;
    }
    flipped[a] = 0;
  }
  return out;
}

Outcome ac9() {
  bool ok = true;
  int keys = 0;
  std::string detail;
  for (double alpha : {0.005, 0.05, 0.2, 0.4}) {
    int first_fail_min = 99;
    for (std::uint64_t s = 0; s < 10; ++s) {
      const PrcKey key = PrcKey::generate(PrcParams{32, 8, 3, alpha}, RngSeed{90, s});
      const PrcScheme scheme(key);
      const auto report = well_behaved_probe(scheme, ProbeOptions{3, 1, ProbeMode::Exhaustive, 1, RngSeed{91, s}});
      const auto oracle = breaking_sets(key);
      ++keys;
      for (int h = 1; h <= 3; ++h) ok = ok && report.failures[h] == oracle[h];
      ok = ok && report.failures[0] == 0;
      const int radius = prc_guaranteed_radius(key);
      for (int h = 1; h <= std::min(radius, 3); ++h) ok = ok && oracle[h] == 0;
      if (auto f = report.first_failing_distance()) first_fail_min = std::min(first_fail_min, *f);
    }
    detail += "alpha " + fmt(alpha) + ": first failing distance " +
              (first_fail_min == 99 ? std::string(">3") : std::to_string(first_fail_min)) + "; ";
  }
  detail += std::to_string(keys) + " keys at d=32, t=8, w=3; probe failures match the odd-intersection oracle at every distance <= 3";
  return {ok, detail};
}

// --- 10: overhead ---------------------------------------------------------------
Outcome ac10() {
  const auto bytes = transform_storage_bytes(16384, 4);
  const std::vector<int> dims{4096};
  const auto rows = transform_overhead_bench(dims, 4, 5, 10);
  const auto& r = rows.front();
  const bool ok = bytes == 1073741824ull && r.status == "ok" && r.repetitions == 5 && r.median_seconds > 0.0;
  return {ok, "storage at d=16384, 4-byte elements = " + std::to_string(bytes) +
                  " bytes; d=4096 apply+invert median " + fmt(r.median_seconds, 3) + " s (IQR " +
                  fmt(r.iqr_seconds, 3) + " s, " + std::to_string(r.repetitions) + " reps, setup " +
                  fmt(r.setup_seconds, 3) + " s, status " + r.status + ")"};
}

// --- 11: Haar sampler -----------------------------------------------------------
Outcome ac11() {
  double worst = 0.0;
  bool ortho = true;
  for (int d : {8, 64, 256}) {
    for (int s = 0; s < 100; ++s) {
      const double res = haar_sample<double>(d, RngSeed{110, static_cast<std::uint64_t>(s)}).orthonormality_residual();
      worst = std::max(worst, res / d);
      ortho = ortho && res <= 1e-9 * d;
    }
  }
  int positive = 0;
  const int n = 10000;
  std::vector<double> col;
  for (int s = 0; s < n; ++s) {
    positive += haar_sample<double>(1, RngSeed{111, static_cast<std::uint64_t>(s)}).matrix()(0, 0) > 0;
    col.push_back(haar_sample<double>(3, RngSeed{112, static_cast<std::uint64_t>(s)}).matrix()(0, 0));
  }
  const auto ci = wilson_interval(positive, n, 0.95);
  const double ks = ks_statistic(col, [](double x) { return std::clamp((x + 1.0) / 2.0, 0.0, 1.0); });
  const double crit = ks_critical_value(n, 0.01);
  const bool ok = ortho && ci.contains(0.5) && ks < crit;
  return {ok, "max residual/d " + fmt(worst, 3) + " (<= 1e-9); dim-1 positive fraction " +
                  fmt(positive / static_cast<double>(n), 4) + " CI [" + fmt(ci.low, 4) + ", " + fmt(ci.high, 4) +
                  "]; dim-3 column KS D=" + fmt(ks, 3) + " (< " + fmt(crit, 3) + ")"};
}

// --- 12: greedy optimality ------------------------------------------------------
Outcome ac12() {
  int matches = 0;
  const int instances = 100;
  Rng rng(RngSeed{120, 0});
  for (int i = 0; i < instances; ++i) {
    const int d = 1 + static_cast<int>(rng.below(12));
    const auto s = sample_std_gauss(d, RngSeed{121, static_cast<std::uint64_t>(i)});
    const double eps = 4.0 * rng.uniform();
    int best = 0;
    for (unsigned mask = 0; mask < (1u << d); ++mask) {
      double sq = 0.0;
      for (int j = 0; j < d; ++j) {
        if (mask >> j & 1u) sq += 4.0 * s[j] * s[j];
      }
      if (std::sqrt(sq) <= eps) best = std::max(best, __builtin_popcount(mask));
    }
    matches += stealthy_attack(s, eps).flipped_count == best;
  }
  return {matches == instances, std::to_string(matches) + "/" + std::to_string(instances) +
                                    " instances (d <= 12) match the exhaustive optimum"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"AC1 stealthy vs whitenoise separation", ac1},
      {"AC2 whitenoise closed form at tau=45", ac2},
      {"AC3 ASR crossing order", ac3},
      {"AC4 defense equalization", ac4},
      {"AC5 backdoored detector gap", ac5},
      {"AC6 false-alarm calibration", ac6},
      {"AC7 stealthiness contrast", ac7},
      {"AC8 IND distinguishers", ac8},
      {"AC9 well-behavedness radius", ac9},
      {"AC10 transform overhead", ac10},
      {"AC11 Haar sampler", ac11},
      {"AC12 greedy optimality", ac12},
  };
  int failures = 0;
  for (const auto& [name, fn] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("[%s] %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(),
                seconds_since(t0));
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
