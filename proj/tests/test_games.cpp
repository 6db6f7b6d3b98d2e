#include <atomic>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "wmlab/core/stats.hpp"
#include "wmlab/games/channel.hpp"
#include "wmlab/games/estimates.hpp"
#include "wmlab/games/ind_game.hpp"
#include "wmlab/games/oracle.hpp"
#include "wmlab/games/parallel.hpp"
#include "wmlab/games/removal_game.hpp"

using namespace wmlab;

namespace {

SchemeConfig prc_config(int d = 1024, int t = 64, bool haar = false) {
  SchemeConfig cfg;
  cfg.codec = CodecKind::Prc;
  cfg.prc = PrcParams{d, t, 3, 0.01};
  cfg.haar_transform = haar;
  return cfg;
}

SchemeConfig gs_config(int d = 1024, int m = 64) {
  SchemeConfig cfg;
  cfg.codec = CodecKind::Gs;
  cfg.gs = GsParams{d, m, 0.01};
  return cfg;
}

ExperimentConfig experiment(SchemeConfig scheme, AdversaryKind kind, double param, double eps,
                            int trials = 50, std::uint64_t seed = 1) {
  ExperimentConfig cfg;
  cfg.scheme = scheme;
  cfg.adversary = AdversarySpec{kind, param, 0.02};
  cfg.epsilon = eps;
  cfg.trials = trials;
  cfg.master_seed = seed;
  return cfg;
}

TrialRecord record(bool before, bool success, bool violation = false) {
  TrialRecord r;
  r.watermark_detected_before = before;
  r.removal_success = success;
  r.budget_violation = violation;
  return r;
}

}  // namespace

TEST(Channel, ZeroSigmaIsIdentity) {
  const auto x = sample_std_gauss(100, RngSeed{1, 0});
  EXPECT_EQ(inversion_channel(x, 0.0, RngSeed{1, 1}), x);
  EXPECT_THROW(inversion_channel(x, -0.1, RngSeed{1, 1}), InvalidArgument);
  EXPECT_THROW(inversion_channel(x, std::nan(""), RngSeed{1, 1}), InvalidArgument);
}

TEST(Channel, NoiseMoments) {
  const auto x = Eigen::VectorXd::Zero(200000);
  const auto y = inversion_channel(x, 0.5, RngSeed{2, 0});
  EXPECT_NEAR(y.mean(), 0.0, 4 * 0.5 / std::sqrt(200000.0));
  EXPECT_NEAR(std::sqrt(y.squaredNorm() / 200000.0), 0.5, 0.005);
}

TEST(Channel, FlipRateMatchesClosedForm) {
  for (double sigma : {0.1, 0.3, 1.0}) {
    std::int64_t flips = 0;
    const int d = 100000;
    const auto x = sample_std_gauss(d, RngSeed{3, 0});
    const auto y = inversion_channel(x, sigma, RngSeed{3, 1});
    for (int i = 0; i < d; ++i) flips += (x[i] > 0) != (y[i] > 0);
    EXPECT_NEAR(channel_flip_rate(sigma), std::atan(sigma) / std::numbers::pi, 1e-15);
    EXPECT_TRUE(wilson_interval(flips, d, 0.999).contains(channel_flip_rate(sigma))) << sigma;
  }
}

TEST(Oracle, FreshDeterministicAndBudgeted) {
  const SchemePtr scheme = build_scheme(prc_config(256, 32), RngSeed{4, 0});
  WatermarkOracle a(scheme, RngSeed{4, 1}, 2);
  WatermarkOracle b(scheme, RngSeed{4, 1}, 2);
  const auto a1 = a();
  const auto a2 = a.next();
  EXPECT_NE(a1, a2);
  EXPECT_EQ(b(), a1);
  EXPECT_EQ(a.queries(), 2u);
  EXPECT_EQ(a.remaining(), 0u);
  EXPECT_THROW(a(), OracleBudgetExceeded);
  EXPECT_TRUE(scheme->detect(a1).watermarked);
}

TEST(Parallel, CoversEveryIndexOnce) {
  std::vector<std::atomic<int>> hits(1000);
  parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i]++; });
  for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
  EXPECT_EQ(resolve_workers(3), 3);
  EXPECT_GE(resolve_workers(0), 1);
}

TEST(Parallel, PropagatesExceptions) {
  EXPECT_THROW(parallel_for(100, 3,
                            [](std::size_t i) {
                              if (i == 37) throw std::runtime_error("boom");
                            }),
               std::runtime_error);
}

TEST(Names, RoundTrip) {
  for (auto k : {AdversaryKind::Identity, AdversaryKind::Negate, AdversaryKind::Whitenoise,
                 AdversaryKind::Stealthy, AdversaryKind::MinDistortion, AdversaryKind::SumCodeword}) {
    EXPECT_EQ(parse_adversary_kind(to_string(k)), k);
  }
  EXPECT_EQ(parse_codec_kind("gs"), CodecKind::Gs);
  EXPECT_EQ(parse_detector_kind("backdoored"), DetectorKind::Backdoored);
  EXPECT_THROW(parse_adversary_kind("regenerate"), InvalidArgument);
  EXPECT_THROW(parse_codec_kind("dwt"), InvalidArgument);
}

TEST(RemovalGame, ConfigValidation) {
  auto cfg = experiment(prc_config(), AdversaryKind::Stealthy, 1.0, 1.0);
  cfg.trials = 0;
  EXPECT_THROW(removal_game(cfg), InvalidArgument);
  cfg = experiment(prc_config(), AdversaryKind::Stealthy, 1.0, -1.0);
  EXPECT_THROW(removal_game(cfg), InvalidArgument);
  cfg = experiment(prc_config(), AdversaryKind::Whitenoise, -1.0, 1.0);
  EXPECT_THROW(removal_game(cfg), InvalidArgument);
  cfg = experiment(prc_config(), AdversaryKind::Stealthy, 1.0, 1.0);
  cfg.sigma_inv = -1;
  EXPECT_THROW(removal_game(cfg), InvalidArgument);
}

TEST(RemovalGame, IdentityNeverRemovesNoiselessly) {
  for (const auto& scheme : {prc_config(), gs_config()}) {
    const auto records = removal_game(experiment(scheme, AdversaryKind::Identity, 0, 0, 50));
    ASSERT_EQ(records.size(), 50u);
    for (const auto& r : records) {
      EXPECT_TRUE(r.watermark_detected_before);
      EXPECT_FALSE(r.removal_success);
      EXPECT_EQ(r.realized_l2, 0.0);
      EXPECT_EQ(r.bits_flipped_fraction, 0.0);
    }
  }
}

TEST(RemovalGame, OverBudgetEditNeverCounts) {
  // Negation removes the PRC mark but costs 2|s| ~ 64 at d = 1024.
  const auto cheap = removal_game(experiment(prc_config(), AdversaryKind::Negate, 0, 10.0, 30));
  const auto rich = removal_game(experiment(prc_config(), AdversaryKind::Negate, 0, 200.0, 30));
  for (std::size_t i = 0; i < cheap.size(); ++i) {
    EXPECT_TRUE(cheap[i].budget_violation);
    EXPECT_FALSE(cheap[i].removal_success);
    EXPECT_FALSE(rich[i].budget_violation);
    EXPECT_TRUE(rich[i].removal_success);
    EXPECT_EQ(rich[i].bits_flipped_fraction, 1.0);
  }
  const auto est = asr_estimate(cheap);
  EXPECT_EQ(est.budget_violations, 30);
  EXPECT_EQ(est.successes, 0);
}

TEST(RemovalGame, RecordsRespectBudgetAndConvention) {
  SweepConfig sweep;
  sweep.scheme = prc_config(256, 32, true);
  sweep.trials = 30;
  sweep.sigma_inv = 0.2;
  sweep.master_seed = 5;
  for (double eps : {2.0, 8.0, 16.0}) {
    sweep.arms.push_back({AdversarySpec{AdversaryKind::Stealthy, eps, 0.02}, eps});
    sweep.arms.push_back({AdversarySpec{AdversaryKind::Whitenoise, eps, 0.02}, eps});
    sweep.arms.push_back({AdversarySpec{AdversaryKind::MinDistortion, eps, 0.02}, eps});
  }
  const auto records = removal_sweep(sweep, 2);
  ASSERT_EQ(records.size(), sweep.arms.size());
  for (std::size_t a = 0; a < records.size(); ++a) {
    for (const auto& r : records[a]) {
      const double eps = sweep.arms[a].epsilon;
      EXPECT_EQ(r.budget_violation, r.realized_l2 > eps * (1 + 1e-12));
      if (sweep.arms[a].adversary.kind != AdversaryKind::MinDistortion) {
        // The gamma residual can push min-distortion a hair past the budget;
        // the other two never leave it.
        EXPECT_FALSE(r.budget_violation);
      }
      if (r.removal_success) {
        EXPECT_TRUE(r.watermark_detected_before);
        EXPECT_FALSE(r.budget_violation);
      }
      EXPECT_GE(r.bits_flipped_fraction, 0.0);
      EXPECT_LE(r.bits_flipped_fraction, 1.0);
      if (sweep.arms[a].adversary.kind == AdversaryKind::Whitenoise) {
        EXPECT_NEAR(r.realized_l2, sweep.arms[a].epsilon, 1e-9);
      }
    }
  }
}

TEST(RemovalGame, SweepMatchesSingleArmRunsAndWorkerCount) {
  SweepConfig sweep;
  sweep.scheme = prc_config(512, 32);
  sweep.trials = 40;
  sweep.sigma_inv = 0.1;
  sweep.master_seed = 9;
  sweep.arms = {{AdversarySpec{AdversaryKind::Stealthy, 3.0, 0.02}, 3.0},
                {AdversarySpec{AdversaryKind::Whitenoise, 6.0, 0.02}, 6.0}};
  const auto serial = removal_sweep(sweep, 1);
  const auto threaded = removal_sweep(sweep, 3);
  for (std::size_t a = 0; a < sweep.arms.size(); ++a) {
    ExperimentConfig single;
    single.scheme = sweep.scheme;
    single.adversary = sweep.arms[a].adversary;
    single.epsilon = sweep.arms[a].epsilon;
    single.sigma_inv = sweep.sigma_inv;
    single.trials = sweep.trials;
    single.master_seed = sweep.master_seed;
    const auto alone = removal_game(single);
    for (int i = 0; i < sweep.trials; ++i) {
      EXPECT_EQ(serial[a][i].removal_success, alone[i].removal_success);
      EXPECT_EQ(serial[a][i].realized_l2, alone[i].realized_l2);
      EXPECT_EQ(serial[a][i].removal_success, threaded[a][i].removal_success);
      EXPECT_EQ(serial[a][i].bits_flipped_fraction, threaded[a][i].bits_flipped_fraction);
      EXPECT_EQ(serial[a][i].trial_index, i);
    }
  }
}

TEST(RemovalGame, NoisyChannelExcludesSomeTrials) {
  // Heavy inversion noise breaks detection of the clean sample in some trials.
  auto cfg = experiment(prc_config(1024, 64), AdversaryKind::Identity, 0, 0, 100);
  cfg.sigma_inv = 0.6;
  const auto est = asr_estimate(removal_game(cfg));
  EXPECT_GT(est.excluded, 0);
  EXPECT_EQ(est.excluded + est.eligible, 100);
}

TEST(RemovalGame, StealthyBeatsWhitenoiseUndefended) {
  const double eps = 8.0;
  SweepConfig sweep;
  sweep.scheme = prc_config();
  sweep.trials = 100;
  sweep.arms = {{AdversarySpec{AdversaryKind::Stealthy, eps, 0.02}, eps},
                {AdversarySpec{AdversaryKind::Whitenoise, eps, 0.02}, eps}};
  const auto r = removal_sweep(sweep, 2);
  const auto adv = advantage(r[0], r[1]);
  EXPECT_GT(adv.ci.low, 0.5);
}

TEST(RemovalGame, SumCodewordBreaksBackdooredDetectorOnly) {
  auto scheme = prc_config(512, 64, true);
  scheme.detector = DetectorKind::Backdoored;
  const double eps = 0.01 * std::sqrt(512.0);
  SweepConfig sweep;
  sweep.scheme = scheme;
  sweep.trials = 100;
  sweep.master_seed = 17;
  sweep.arms = {{AdversarySpec{AdversaryKind::SumCodeword, 1e-3, 0.02}, eps},
                {AdversarySpec{AdversaryKind::Whitenoise, eps, 0.02}, eps}};
  const auto backdoored = removal_sweep(sweep, 2);
  EXPECT_GE(asr_estimate(backdoored[0]).asr, 0.9);
  EXPECT_LE(asr_estimate(backdoored[1]).asr, 0.05);
  sweep.scheme.detector = DetectorKind::Standard;
  const auto standard = removal_sweep(sweep, 2);
  EXPECT_EQ(asr_estimate(standard[0]).successes, 0);
}

TEST(IndGame, ConstantGuessIsACoinFlip) {
  const auto res = ind_game(prc_config(256, 32), constant_distinguisher(0), 400, 0, 21);
  EXPECT_EQ(res.trials, 400);
  EXPECT_TRUE(res.ci.contains(0.5));
  EXPECT_THROW(constant_distinguisher(2), InvalidArgument);
}

TEST(IndGame, SignCorrelationSeparatesCodecs) {
  const auto gs = ind_game(gs_config(), sign_correlation_distinguisher(), 300, 1, 22);
  EXPECT_GE(gs.win_rate, 0.95);
  const auto prc = ind_game(prc_config(256, 32), sign_correlation_distinguisher(), 2000, 1, 23, 0.99);
  EXPECT_TRUE(prc.ci.contains(0.5)) << prc.win_rate;
}

TEST(IndGame, ZeroBudgetDistinguisherGuessesZero) {
  const auto res = ind_game(gs_config(), sign_correlation_distinguisher(), 300, 0, 24);
  EXPECT_TRUE(res.ci.contains(0.5));
}

TEST(Estimates, AsrCountsEligibleTrialsOnly) {
  const std::vector<TrialRecord> recs{record(true, true), record(true, false), record(false, false),
                                      record(true, false, true), record(true, true)};
  const auto est = asr_estimate(recs);
  EXPECT_EQ(est.eligible, 4);
  EXPECT_EQ(est.excluded, 1);
  EXPECT_EQ(est.successes, 2);
  EXPECT_EQ(est.budget_violations, 1);
  EXPECT_DOUBLE_EQ(est.asr, 0.5);
  const auto w = wilson_interval(2, 4, 0.95);
  EXPECT_EQ(est.ci.low, w.low);
  EXPECT_EQ(est.ci.high, w.high);

  const auto none = asr_estimate(std::vector<TrialRecord>{record(false, false)});
  EXPECT_EQ(none.ci.low, 0.0);
  EXPECT_EQ(none.ci.high, 1.0);
}

TEST(Estimates, AdvantageIsDifferenceWithNewcombeInterval) {
  std::vector<TrialRecord> a(100, record(true, false));
  std::vector<TrialRecord> w(100, record(true, false));
  for (int i = 0; i < 60; ++i) a[i].removal_success = true;
  for (int i = 0; i < 20; ++i) w[i].removal_success = true;
  const auto adv = advantage(a, w);
  EXPECT_DOUBLE_EQ(adv.delta, 0.4);
  const auto ref = newcombe_difference_interval(60, 100, 20, 100, 0.95);
  EXPECT_EQ(adv.ci.low, ref.low);
  EXPECT_EQ(adv.ci.high, ref.high);
}

TEST(Estimates, AdvantageUsesBestWhitenoiseWithinBudget) {
  std::vector<TrialRecord> a(50, record(true, false));
  std::vector<std::vector<TrialRecord>> arms(3, std::vector<TrialRecord>(50, record(true, false)));
  for (int i = 0; i < 30; ++i) a[i].removal_success = true;
  for (int i = 0; i < 10; ++i) arms[0][i].removal_success = true;
  for (int i = 0; i < 20; ++i) arms[1][i].removal_success = true;
  for (int i = 0; i < 45; ++i) arms[2][i].removal_success = true;
  const std::vector<double> taus{1.0, 2.0, 3.0};
  const auto adv = advantage(a, arms, taus, 2.0);
  ASSERT_TRUE(adv.best_tau.has_value());
  EXPECT_EQ(*adv.best_tau, 2.0);
  EXPECT_NEAR(adv.delta, 0.2, 1e-12);
  EXPECT_EQ(whitenoise_tau_grid(4.0, 4), (std::vector<double>{1.0, 2.0, 3.0, 4.0}));
}

TEST(Estimates, FirstCrossingInterpolates) {
  const std::vector<double> eps{1, 2, 3, 4};
  EXPECT_EQ(first_crossing(eps, std::vector<double>{0.0, 0.2, 0.6, 1.0}, 0.5), 2.75);
  EXPECT_EQ(first_crossing(eps, std::vector<double>{0.7, 0.8, 0.9, 1.0}, 0.5), 1.0);
  EXPECT_FALSE(first_crossing(eps, std::vector<double>{0.0, 0.1, 0.2, 0.3}, 0.5).has_value());
  EXPECT_THROW(first_crossing(eps, std::vector<double>{0.0, 0.1}, 0.5), std::invalid_argument);
}

TEST(Estimates, CrossingIntervalBracketsPoint) {
  const std::vector<double> eps{1, 2, 3, 4, 5};
  std::vector<AsrEstimate> curve;
  for (int k : {0, 10, 45, 80, 100}) {
    AsrEstimate e;
    e.successes = k;
    e.eligible = 100;
    e.asr = k / 100.0;
    e.ci = wilson_interval(k, 100, 0.95);
    curve.push_back(e);
  }
  const auto c = asr_crossing(eps, curve, 0.5);
  ASSERT_TRUE(c.epsilon && c.low && c.high);
  EXPECT_LE(*c.low, *c.epsilon);
  EXPECT_GE(*c.high, *c.epsilon);
  EXPECT_NEAR(*c.epsilon, 3 + 5.0 / 35.0, 1e-12);
}
