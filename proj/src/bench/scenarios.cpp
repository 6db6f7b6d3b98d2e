#include "wmlab/bench/scenarios.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "wmlab/attacks/attacks.hpp"
#include "wmlab/bench/overhead.hpp"
#include "wmlab/bench/plotdata.hpp"
#include "wmlab/bench/ratio_table.hpp"
#include "wmlab/defense/orthonormal_transform.hpp"
#include "wmlab/games/estimates.hpp"
#include "wmlab/games/ind_game.hpp"
#include "wmlab/games/parallel.hpp"

namespace wmlab {

using nlohmann::json;

std::vector<FlipPoint> bits_vs_distortion(int d, std::span<const AdversaryKind> adversaries,
                                          std::span<const double> epsilons, int trials,
                                          double gamma, std::uint64_t seed, int workers) {
  if (d < 1) throw InvalidArgument("bits_vs_distortion: d must be >= 1");
  if (trials < 1) throw InvalidArgument("bits_vs_distortion: trials must be >= 1");
  for (auto a : adversaries) {
    if (a != AdversaryKind::Whitenoise && a != AdversaryKind::Stealthy &&
        a != AdversaryKind::MinDistortion) {
      throw InvalidArgument("bits_vs_distortion: unsupported adversary '" +
                            std::string(to_string(a)) + "'");
    }
  }
  for (double e : epsilons) {
    if (!(e >= 0.0)) throw InvalidArgument("bits_vs_distortion: epsilon must be >= 0");
  }
  const std::size_t na = adversaries.size();
  const std::size_t ne = epsilons.size();
  const auto nt = static_cast<std::size_t>(trials);
  // [adversary][epsilon][trial]
  std::vector<double> flips(na * ne * nt);
  std::vector<double> norms(na * ne * nt);
  auto at = [&](std::size_t a, std::size_t e, std::size_t t) { return (a * ne + e) * nt + t; };

  parallel_for(nt, workers, [&](std::size_t t) {
    const RngSeed trial{seed, static_cast<std::uint64_t>(t)};
    const Eigen::VectorXd s = sample_std_gauss(d, trial.derive(StreamTag::Sample));
    for (std::size_t a = 0; a < na; ++a) {
      for (std::size_t e = 0; e < ne; ++e) {
        AttackOutcome<double> out;
        switch (adversaries[a]) {
          case AdversaryKind::Whitenoise:
            out = whitenoise_attack(s, epsilons[e], trial.derive(StreamTag::Attack));
            break;
          case AdversaryKind::Stealthy:
            out = stealthy_attack(s, epsilons[e]);
            break;
          default:
            out = min_distortion_attack(s, epsilons[e], gamma);
            break;
        }
        flips[at(a, e, t)] = static_cast<double>(out.flipped_count) / d;
        norms[at(a, e, t)] = out.realized_l2;
      }
    }
  });

  std::vector<FlipPoint> points;
  for (std::size_t a = 0; a < na; ++a) {
    for (std::size_t e = 0; e < ne; ++e) {
      FlipPoint p;
      p.adversary = adversaries[a];
      p.epsilon = epsilons[e];
      p.flip = mean_estimate(std::span(flips).subspan(at(a, e, 0), nt));
      p.realized = mean_estimate(std::span(norms).subspan(at(a, e, 0), nt));
      points.push_back(p);
    }
  }
  return points;
}

CsvTable bits_csv(const std::vector<FlipPoint>& points, double confidence) {
  CsvTable t;
  t.columns = kBitsColumns;
  const double z = two_sided_z(confidence);
  for (const auto& p : points) {
    const Interval ci = p.flip.ci(z);
    t.add_row({std::string(to_string(p.adversary)), format_number(p.epsilon),
               format_number(p.flip.mean), format_number(ci.low), format_number(ci.high),
               format_number(p.realized.mean)});
  }
  return t;
}

FalseAlarm false_alarm_rate(const SchemeConfig& scheme, int samples, std::uint64_t seed,
                            int workers) {
  scheme.validate();
  if (samples < 1) throw InvalidArgument("false_alarm_rate: samples must be >= 1");
  std::vector<char> fired(static_cast<std::size_t>(samples), 0);
  parallel_for(fired.size(), workers, [&](std::size_t i) {
    const RngSeed trial{seed, static_cast<std::uint64_t>(i)};
    const SchemePtr s = build_scheme(scheme, trial.derive(StreamTag::Key));
    fired[i] = s->detect(sample_std_gauss(s->dim(), trial.derive(StreamTag::Sample))).watermarked;
  });
  FalseAlarm fa;
  fa.samples = samples;
  for (char f : fired) fa.alarms += f;
  return fa;
}

double false_alarm_bound(double alpha, std::int64_t n) {
  return alpha + 3.0 * std::sqrt(alpha * (1.0 - alpha) / static_cast<double>(n));
}

namespace {

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

struct Output {
  CsvTable csv;
  json results = json::object();
  std::vector<std::string> notes;
  std::vector<std::pair<PlotSpec, std::string>> plots;  // spec, stem
  std::vector<CsvTable> plot_tables;                     // parallel to plots
};

Output run_bits(const ScenarioConfig& c, int workers) {
  Output out;
  const auto points = bits_vs_distortion(static_cast<int>(c.scheme.dim()), c.adversaries,
                                         c.epsilons, c.trials, c.gamma, c.seed, workers);
  out.csv = bits_csv(points);
  const double sqrt_d = std::sqrt(static_cast<double>(c.scheme.dim()));
  json closed = json::array();
  for (double e : c.epsilons) {
    closed.push_back({{"epsilon", e}, {"flip_fraction", std::atan(e / sqrt_d) / std::numbers::pi}});
  }
  out.results["whitenoise_closed_form"] = closed;
  const bool have_pair =
      std::find(c.adversaries.begin(), c.adversaries.end(), AdversaryKind::Whitenoise) !=
          c.adversaries.end() &&
      std::find(c.adversaries.begin(), c.adversaries.end(), AdversaryKind::Stealthy) !=
          c.adversaries.end();
  if (have_pair) {
    const std::vector<double> targets{0.01, 0.05, 0.10};
    json rows = json::array();
    for (const auto& r : ratio_table(out.csv, targets)) {
      rows.push_back({{"target_flip_fraction", r.target},
                      {"whitenoise_epsilon", optional_json(r.numerator_epsilon)},
                      {"stealthy_epsilon", optional_json(r.denominator_epsilon)},
                      {"ratio", optional_json(r.ratio)}});
    }
    out.results["ratio_table"] = rows;
  }
  out.notes.push_back("whitenoise runs at tau = epsilon; flips are sign changes relative to the clean starting point");
  PlotSpec spec;
  spec.y_column = "mean_flip_fraction";
  out.plots.push_back({spec, "bits_vs_distortion"});
  out.plot_tables.push_back(out.csv);
  return out;
}

const std::vector<std::string> kAsrColumns{
    "t",        "adversary", "epsilon",          "asr",
    "ci_low",   "ci_high",   "successes",        "eligible",
    "excluded", "budget_violations", "mean_realized_l2", "mean_flip_fraction"};

std::vector<std::string> asr_row(const std::string& t, AdversaryKind kind, double eps,
                                 const std::vector<TrialRecord>& recs) {
  const AsrEstimate est = asr_estimate(recs);
  std::vector<double> l2;
  std::vector<double> flips;
  for (const auto& r : recs) {
    l2.push_back(r.realized_l2);
    flips.push_back(r.bits_flipped_fraction);
  }
  return {t,
          std::string(to_string(kind)),
          format_number(eps),
          format_number(est.asr),
          format_number(est.ci.low),
          format_number(est.ci.high),
          std::to_string(est.successes),
          std::to_string(est.eligible),
          std::to_string(est.excluded),
          std::to_string(est.budget_violations),
          format_number(mean_estimate(l2).mean),
          format_number(mean_estimate(flips).mean)};
}

SweepArm arm_for(AdversaryKind kind, double eps, const ScenarioConfig& c) {
  SweepArm arm;
  arm.epsilon = eps;
  arm.adversary.kind = kind;
  arm.adversary.gamma = c.gamma;
  arm.adversary.param = kind == AdversaryKind::SumCodeword ? c.delta1 : eps;
  return arm;
}

Output run_asr(const ScenarioConfig& c, int workers) {
  Output out;
  out.csv.columns = kAsrColumns;
  std::vector<int> ts = c.t_values;
  if (ts.empty() || c.scheme.codec != CodecKind::Prc) ts = {c.scheme.prc.t};
  json crossings = json::array();
  for (int t : ts) {
    SweepConfig sweep;
    sweep.scheme = c.scheme;
    sweep.scheme.prc.t = t;
    sweep.sigma_inv = c.sigma_inv;
    sweep.trials = c.trials;
    sweep.master_seed = c.seed;
    for (auto kind : c.adversaries) {
      for (double e : c.epsilons) sweep.arms.push_back(arm_for(kind, e, c));
    }
    const auto records = removal_sweep(sweep, workers);
    CsvTable per_t;
    per_t.columns = kAsrColumns;
    std::size_t k = 0;
    for (auto kind : c.adversaries) {
      std::vector<AsrEstimate> curve;
      for (double e : c.epsilons) {
        auto row = asr_row(std::to_string(t), kind, e, records[k]);
        curve.push_back(asr_estimate(records[k]));
        out.csv.add_row(row);
        per_t.add_row(std::move(row));
        ++k;
      }
      const Crossing cr = asr_crossing(c.epsilons, curve);
      crossings.push_back({{"t", t},
                           {"adversary", to_string(kind)},
                           {"epsilon_at_half", optional_json(cr.epsilon)},
                           {"ci_low", optional_json(cr.low)},
                           {"ci_high", optional_json(cr.high)}});
    }
    PlotSpec spec;
    spec.y_column = "asr";
    out.plots.push_back({spec, "asr_t" + std::to_string(t)});
    out.plot_tables.push_back(std::move(per_t));
  }
  out.results["crossings"] = crossings;
  out.notes.push_back("crossing = first epsilon where the ASR curve reaches 1/2 (linear interpolation); its interval comes from the Wilson bounds");
  out.notes.push_back("attack-time and detection-time channel noises are independent draws");
  return out;
}

Output run_equalization(const ScenarioConfig& c, int workers) {
  Output out;
  out.csv.columns = {"defended",        "epsilon",          "asr_stealthy",
                     "stealthy_ci_low", "stealthy_ci_high", "asr_whitenoise",
                     "whitenoise_ci_low", "whitenoise_ci_high", "delta",
                     "delta_ci_low",    "delta_ci_high",    "zero_in_ci"};
  json summary = json::array();
  for (int defended = 0; defended <= 1; ++defended) {
    SweepConfig sweep;
    sweep.scheme = c.scheme;
    sweep.scheme.haar_transform = defended == 1;
    sweep.sigma_inv = c.sigma_inv;
    sweep.trials = c.trials;
    sweep.master_seed = c.seed;
    for (double e : c.epsilons) {
      sweep.arms.push_back(arm_for(AdversaryKind::Stealthy, e, c));
      sweep.arms.push_back(arm_for(AdversaryKind::Whitenoise, e, c));
    }
    const auto records = removal_sweep(sweep, workers);
    int inside = 0;
    for (std::size_t k = 0; k < c.epsilons.size(); ++k) {
      const Advantage adv = advantage(records[2 * k], records[2 * k + 1]);
      const bool zero_in = adv.ci.contains(0.0);
      inside += zero_in;
      out.csv.add_row({std::to_string(defended), format_number(c.epsilons[k]),
                       format_number(adv.adversary.asr), format_number(adv.adversary.ci.low),
                       format_number(adv.adversary.ci.high), format_number(adv.whitenoise.asr),
                       format_number(adv.whitenoise.ci.low), format_number(adv.whitenoise.ci.high),
                       format_number(adv.delta), format_number(adv.ci.low),
                       format_number(adv.ci.high), zero_in ? "1" : "0"});
    }
    summary.push_back({{"defended", defended == 1},
                       {"points", c.epsilons.size()},
                       {"points_with_zero_in_ci", inside}});
  }
  out.results["equalization"] = summary;
  out.notes.push_back("stealthy and whitenoise compared at matched epsilon (tau = epsilon); delta CI is the Newcombe hybrid-score interval");
  out.notes.push_back("arms within a trial share the key, transform, sample and channel draws");
  return out;
}

Output run_ind(const ScenarioConfig& c, int) {
  Output out;
  out.csv.columns = {"codec",  "distinguisher", "oracle_budget", "trials",
                     "wins",   "win_rate",      "ci_low",        "ci_high"};
  const std::pair<std::string, Distinguisher> distinguishers[] = {
      {"constant_0", constant_distinguisher(0)},
      {"sign_correlation", sign_correlation_distinguisher(c.agreement_threshold)}};
  for (CodecKind codec : {CodecKind::Gs, CodecKind::Prc}) {
    SchemeConfig scheme = c.scheme;
    scheme.codec = codec;
    scheme.haar_transform = false;
    scheme.detector = DetectorKind::Standard;
    for (const auto& [name, dist] : distinguishers) {
      const IndResult r = ind_game(scheme, dist, c.trials,
                                   static_cast<std::size_t>(c.oracle_budget), c.seed);
      out.csv.add_row({std::string(to_string(codec)), name, std::to_string(c.oracle_budget),
                       std::to_string(r.trials), std::to_string(r.wins),
                       format_number(r.win_rate), format_number(r.ci.low),
                       format_number(r.ci.high)});
    }
  }
  out.notes.push_back("each game draws a fresh key; the challenge is Gauss() or a watermarked sample with probability 1/2");
  return out;
}

Output run_counterexample(const ScenarioConfig& c, int workers) {
  Output out;
  out.csv.columns = {"detector", "adversary", "epsilon", "param",
                     "asr",      "ci_low",    "ci_high", "mean_realized_l2",
                     "budget_violations"};
  for (DetectorKind det : {DetectorKind::Backdoored, DetectorKind::Standard}) {
    SweepConfig sweep;
    sweep.scheme = c.scheme;
    sweep.scheme.detector = det;
    sweep.sigma_inv = c.sigma_inv;
    sweep.trials = c.trials;
    sweep.master_seed = c.seed;
    for (double e : c.epsilons) {
      sweep.arms.push_back(arm_for(AdversaryKind::SumCodeword, e, c));
      sweep.arms.push_back(arm_for(AdversaryKind::Whitenoise, e, c));
    }
    const auto records = removal_sweep(sweep, workers);
    for (std::size_t k = 0; k < sweep.arms.size(); ++k) {
      const AsrEstimate est = asr_estimate(records[k]);
      std::vector<double> l2;
      for (const auto& r : records[k]) l2.push_back(r.realized_l2);
      out.csv.add_row({std::string(to_string(det)), std::string(to_string(sweep.arms[k].adversary.kind)),
                       format_number(sweep.arms[k].epsilon),
                       format_number(sweep.arms[k].adversary.param), format_number(est.asr),
                       format_number(est.ci.low), format_number(est.ci.high),
                       format_number(mean_estimate(l2).mean),
                       std::to_string(est.budget_violations)});
    }
  }
  out.notes.push_back("the backdoored detector's registry holds the trial's own sample and every oracle output issued in that trial");
  return out;
}

Output run_overhead(const ScenarioConfig& c, int) {
  Output out;
  const auto rows = transform_overhead_bench(c.dims, c.element_bytes, c.repetitions, c.seed);
  out.csv = overhead_csv(rows);
  out.results["storage_bytes_d16384_f32"] = transform_storage_bytes(16384, 4);
  out.notes.push_back("timing columns are wall-clock measurements and vary between runs");
  out.notes.push_back("dims above 4096 time a random dense matrix of the same shape instead of sampling a Haar transform");
  return out;
}

Output run_false_alarm(const ScenarioConfig& c, int workers) {
  Output out;
  out.csv.columns = {"codec", "alpha",   "samples", "false_alarms", "rate",
                     "ci_low", "ci_high", "bound",   "within_bound"};
  for (CodecKind codec : {CodecKind::Prc, CodecKind::Gs}) {
    for (double a : c.alphas) {
      SchemeConfig scheme = c.scheme;
      scheme.codec = codec;
      scheme.prc.alpha = scheme.gs.alpha = a;
      scheme.detector = DetectorKind::Standard;
      const FalseAlarm fa = false_alarm_rate(scheme, c.samples, c.seed, workers);
      const Interval ci = wilson_interval(fa.alarms, fa.samples, 0.95);
      const double bound = false_alarm_bound(a, fa.samples);
      out.csv.add_row({std::string(to_string(codec)), format_number(a), std::to_string(fa.samples),
                       std::to_string(fa.alarms), format_number(fa.rate()), format_number(ci.low),
                       format_number(ci.high), format_number(bound),
                       fa.rate() <= bound ? "1" : "0"});
    }
  }
  out.notes.push_back("fresh key per latent; bound = alpha + 3 sqrt(alpha (1 - alpha) / samples)");
  return out;
}

}  // namespace

ScenarioResult run_scenario(ScenarioConfig config, const RunOptions& options) {
  if (options.seed) config.seed = *options.seed;
  if (options.out_dir) config.output_dir = *options.out_dir;
  const int workers = resolve_workers(options.workers);

  Output out;
  switch (config.scenario) {
    case ScenarioKind::BitsVsDistortion: out = run_bits(config, workers); break;
    case ScenarioKind::AsrVsDistortion: out = run_asr(config, workers); break;
    case ScenarioKind::DefenseEqualization: out = run_equalization(config, workers); break;
    case ScenarioKind::IndDistinguishers: out = run_ind(config, workers); break;
    case ScenarioKind::Counterexample: out = run_counterexample(config, workers); break;
    case ScenarioKind::OverheadBench: out = run_overhead(config, workers); break;
    case ScenarioKind::FalseAlarmCalibration: out = run_false_alarm(config, workers); break;
  }

  namespace fs = std::filesystem;
  fs::create_directories(config.output_dir);
  const std::string name(to_string(config.scenario));
  ScenarioResult result;
  result.csv_path = (fs::path(config.output_dir) / (name + ".csv")).string();
  result.json_path = (fs::path(config.output_dir) / (name + ".json")).string();
  out.csv.write(result.csv_path);
  for (std::size_t k = 0; k < out.plots.size(); ++k) {
    auto files = emit_plotdata(out.plot_tables[k], out.plots[k].first, config.output_dir,
                               out.plots[k].second);
    result.plot_files.insert(result.plot_files.end(), files.begin(), files.end());
  }

  json summary;
  summary["schema_version"] = kSummarySchemaVersion;
  summary["scenario"] = name;
  summary["software_version"] = WMLAB_VERSION;
  summary["seed"] = config.seed;
  summary["config_text"] = config.to_text();
  summary["csv"] = fs::path(result.csv_path).filename().string();
  summary["csv_columns"] = out.csv.columns;
  summary["rows"] = out.csv.rows.size();
  summary["results"] = out.results;
  summary["notes"] = out.notes;
  std::ofstream js(result.json_path, std::ios::binary);
  if (!js) throw InvalidArgument("cannot open " + result.json_path + " for writing");
  js << summary.dump(2) << '\n';

  result.csv = std::move(out.csv);
  result.summary = std::move(summary);
  return result;
}

}  // namespace wmlab
