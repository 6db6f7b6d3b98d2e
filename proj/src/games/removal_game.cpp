#include "wmlab/games/removal_game.hpp"

#include <cmath>
#include <optional>

#include "wmlab/attacks/attacks.hpp"
#include "wmlab/defense/enhanced_scheme.hpp"
#include "wmlab/games/channel.hpp"
#include "wmlab/games/oracle.hpp"
#include "wmlab/games/parallel.hpp"

namespace wmlab {

namespace {

// Slack for comparing a realized norm against the budget; the attacks
// already respect the budget as computed, this only absorbs the
// difference between two evaluations of the same norm.
constexpr double kBudgetSlack = 1e-12;

template <typename Enum, std::size_t N>
Enum parse_enum(std::string_view text, const std::pair<std::string_view, Enum> (&table)[N],
                const char* what) {
  for (const auto& [name, value] : table) {
    if (name == text) return value;
  }
  std::string names;
  for (const auto& [name, value] : table) names += (names.empty() ? "" : ", ") + std::string(name);
  throw InvalidArgument(std::string("unknown ") + what + " '" + std::string(text) +
                        "' (expected one of: " + names + ")");
}

constexpr std::pair<std::string_view, CodecKind> kCodecs[] = {{"prc", CodecKind::Prc},
                                                              {"gs", CodecKind::Gs}};
constexpr std::pair<std::string_view, DetectorKind> kDetectors[] = {
    {"standard", DetectorKind::Standard}, {"backdoored", DetectorKind::Backdoored}};
constexpr std::pair<std::string_view, AdversaryKind> kAdversaries[] = {
    {"identity", AdversaryKind::Identity},
    {"negate", AdversaryKind::Negate},
    {"whitenoise", AdversaryKind::Whitenoise},
    {"stealthy", AdversaryKind::Stealthy},
    {"min_distortion", AdversaryKind::MinDistortion},
    {"sum_codeword", AdversaryKind::SumCodeword}};

template <typename Enum, std::size_t N>
std::string_view enum_name(Enum v, const std::pair<std::string_view, Enum> (&table)[N]) {
  for (const auto& [name, value] : table) {
    if (value == v) return name;
  }
  throw InternalError("enum value without a name");
}

}  // namespace

std::string_view to_string(CodecKind kind) { return enum_name(kind, kCodecs); }
std::string_view to_string(DetectorKind kind) { return enum_name(kind, kDetectors); }
std::string_view to_string(AdversaryKind kind) { return enum_name(kind, kAdversaries); }
CodecKind parse_codec_kind(std::string_view text) { return parse_enum(text, kCodecs, "codec"); }
DetectorKind parse_detector_kind(std::string_view text) {
  return parse_enum(text, kDetectors, "detector");
}
AdversaryKind parse_adversary_kind(std::string_view text) {
  return parse_enum(text, kAdversaries, "adversary");
}

Eigen::Index SchemeConfig::dim() const { return codec == CodecKind::Prc ? prc.d : gs.d; }
double SchemeConfig::alpha() const { return codec == CodecKind::Prc ? prc.alpha : gs.alpha; }

void SchemeConfig::validate() const {
  if (codec == CodecKind::Prc) {
    prc.validate();
  } else {
    gs.validate();
  }
  if (detector == DetectorKind::Backdoored && !(backdoor_eta > 0.0 && backdoor_eta < 1.0)) {
    throw InvalidArgument("backdoor eta must lie in (0, 1)");
  }
}

SchemePtr build_scheme(const SchemeConfig& config, const RngSeed& key_seed) {
  config.validate();
  SchemePtr base;
  if (config.codec == CodecKind::Prc) {
    base = std::make_shared<PrcScheme>(PrcKey::generate(config.prc, key_seed));
  } else {
    base = std::make_shared<GsScheme>(GsKey::generate(config.gs, key_seed));
  }
  if (!config.haar_transform) return base;
  return std::make_shared<EnhancedScheme>(
      base, haar_sample<double>(base->dim(), key_seed.derive(StreamTag::Transform)));
}

void AdversarySpec::validate() const {
  if (!(param >= 0.0) || !std::isfinite(param)) {
    throw InvalidArgument("adversary parameter must be finite and >= 0");
  }
  if (kind == AdversaryKind::MinDistortion && !(gamma > 0.0)) {
    throw InvalidArgument("min_distortion gamma must be > 0");
  }
}

void ExperimentConfig::validate() const {
  scheme.validate();
  adversary.validate();
  if (!(epsilon >= 0.0)) throw InvalidArgument("epsilon must be >= 0");
  if (!(sigma_inv >= 0.0) || !std::isfinite(sigma_inv)) {
    throw InvalidArgument("sigma_inv must be finite and >= 0");
  }
  if (trials < 1) throw InvalidArgument("trials must be >= 1");
}

void SweepConfig::validate() const {
  scheme.validate();
  if (arms.empty()) throw InvalidArgument("sweep has no arms");
  for (const auto& arm : arms) {
    arm.adversary.validate();
    if (!(arm.epsilon >= 0.0)) throw InvalidArgument("epsilon must be >= 0");
  }
  if (!(sigma_inv >= 0.0) || !std::isfinite(sigma_inv)) {
    throw InvalidArgument("sigma_inv must be finite and >= 0");
  }
  if (trials < 1) throw InvalidArgument("trials must be >= 1");
}

namespace {

struct AdversaryOutput {
  LatentPoint perturbed;
  bool no_op = false;
};

template <typename Oracle>
AdversaryOutput run_adversary(const AdversarySpec& spec, const LatentPoint& observed,
                              const RngSeed& attack_seed, Oracle& oracle) {
  switch (spec.kind) {
    case AdversaryKind::Identity:
      return {observed};
    case AdversaryKind::Negate:
      return {-observed};
    case AdversaryKind::Whitenoise:
      return {whitenoise_attack(observed, spec.param, attack_seed).perturbed};
    case AdversaryKind::Stealthy:
      return {stealthy_attack(observed, spec.param).perturbed};
    case AdversaryKind::MinDistortion: {
      auto out = min_distortion_attack(observed, spec.param, spec.gamma);
      return {std::move(out.perturbed), out.no_op};
    }
    case AdversaryKind::SumCodeword:
      return {sum_codeword_attack(oracle, observed, spec.param)};
  }
  throw InternalError("unhandled adversary kind");
}

void run_trial(const SweepConfig& config, std::size_t trial,
               std::vector<std::vector<TrialRecord>>& out) {
  const RngSeed trial_seed{config.master_seed, static_cast<std::uint64_t>(trial)};
  const SchemePtr scheme = build_scheme(config.scheme, trial_seed.derive(StreamTag::Key));
  const LatentPoint s = scheme->sample(trial_seed.derive(StreamTag::Sample));
  const double sigma = config.sigma_inv;
  const bool backdoored = config.scheme.detector == DetectorKind::Backdoored;

  const LatentPoint observed = inversion_channel(s, sigma, trial_seed.derive(StreamTag::ChannelAttack));
  const LatentPoint observed_base = scheme->to_base(observed);

  for (std::size_t a = 0; a < config.arms.size(); ++a) {
    const SweepArm& arm = config.arms[a];
    std::optional<BackdooredDetector> backdoor;
    if (backdoored) {
      backdoor.emplace(scheme, config.scheme.backdoor_eta);
      backdoor->register_issued_output(s);
    }
    auto detect = [&](const LatentPoint& y) {
      return backdoor ? backdoor->detect(y) : scheme->detect(y);
    };

    TrialRecord rec;
    rec.trial_index = static_cast<std::int64_t>(trial);
    rec.watermark_detected_before =
        detect(inversion_channel(s, sigma, trial_seed.derive(StreamTag::ChannelBefore)))
            .watermarked;

    // Each arm sees the same oracle stream; issued outputs are known to
    // the backdoored detector.
    WatermarkOracle oracle(scheme, trial_seed.derive(StreamTag::Oracle));
    auto issuing_oracle = [&]() {
      LatentPoint w = oracle.next();
      if (backdoor) backdoor->register_issued_output(w);
      return w;
    };
    const AdversaryOutput adv = run_adversary(arm.adversary, observed,
                                              trial_seed.derive(StreamTag::Attack), issuing_oracle);

    rec.no_op = adv.no_op;
    rec.realized_l2 = (adv.perturbed - observed).norm();
    rec.bits_flipped_fraction = bits_flipped(observed_base, scheme->to_base(adv.perturbed));
    rec.budget_violation = rec.realized_l2 > arm.epsilon * (1.0 + kBudgetSlack);
    if (!rec.budget_violation && rec.watermark_detected_before) {
      const LatentPoint at_detector =
          inversion_channel(adv.perturbed, sigma, trial_seed.derive(StreamTag::ChannelDetect));
      rec.removal_success = !detect(at_detector).watermarked;
    }
    if (rec.removal_success && rec.budget_violation) {
      throw InternalError("removal game: success recorded on a budget violation");
    }
    out[a][trial] = rec;
  }
}

}  // namespace

std::vector<std::vector<TrialRecord>> removal_sweep(const SweepConfig& config, int workers) {
  config.validate();
  const auto trials = static_cast<std::size_t>(config.trials);
  std::vector<std::vector<TrialRecord>> out(config.arms.size(), std::vector<TrialRecord>(trials));
  parallel_for(trials, workers, [&](std::size_t i) { run_trial(config, i, out); });
  return out;
}

std::vector<TrialRecord> removal_game(const ExperimentConfig& config, int workers) {
  config.validate();
  SweepConfig sweep;
  sweep.scheme = config.scheme;
  sweep.arms = {SweepArm{config.adversary, config.epsilon}};
  sweep.sigma_inv = config.sigma_inv;
  sweep.trials = config.trials;
  sweep.master_seed = config.master_seed;
  return std::move(removal_sweep(sweep, workers).front());
}

}  // namespace wmlab
