#include "wmlab/games/ind_game.hpp"

#include "wmlab/attacks/attacks.hpp"

namespace wmlab {

IndResult ind_game(const SchemeConfig& scheme, const Distinguisher& distinguisher, int trials,
                   std::size_t oracle_budget, std::uint64_t master_seed, double confidence) {
  scheme.validate();
  if (trials < 1) throw InvalidArgument("ind_game: trials must be >= 1");
  if (!distinguisher) throw InvalidArgument("ind_game: empty distinguisher");
  IndResult result;
  result.trials = trials;
  for (int i = 0; i < trials; ++i) {
    const RngSeed trial_seed{master_seed, static_cast<std::uint64_t>(i)};
    const SchemePtr s = build_scheme(scheme, trial_seed.derive(StreamTag::Key));
    Rng coin(trial_seed.derive(StreamTag::Coin));
    const int b = coin.coin() ? 1 : 0;
    const RngSeed challenge_seed = trial_seed.derive(StreamTag::Challenge);
    const LatentPoint challenge =
        b == 1 ? s->sample(challenge_seed) : sample_std_gauss(s->dim(), challenge_seed);
    WatermarkOracle oracle(s, trial_seed.derive(StreamTag::Oracle), oracle_budget);
    const int guess = distinguisher(challenge, oracle);
    if (guess == b) ++result.wins;
  }
  result.win_rate = static_cast<double>(result.wins) / static_cast<double>(trials);
  result.ci = wilson_interval(result.wins, trials, confidence);
  return result;
}

Distinguisher constant_distinguisher(int guess) {
  if (guess != 0 && guess != 1) throw InvalidArgument("constant_distinguisher: guess must be 0 or 1");
  return [guess](const LatentPoint&, WatermarkOracle&) { return guess; };
}

Distinguisher sign_correlation_distinguisher(double agreement_threshold) {
  if (!(agreement_threshold > 0.0 && agreement_threshold <= 1.0)) {
    throw InvalidArgument("sign_correlation_distinguisher: threshold must lie in (0, 1]");
  }
  return [agreement_threshold](const LatentPoint& challenge, WatermarkOracle& oracle) {
    if (oracle.remaining() == 0) return 0;
    const LatentPoint copy = oracle.next();
    const double agreement = 1.0 - bits_flipped(challenge, copy);
    return agreement >= agreement_threshold ? 1 : 0;
  };
}

}  // namespace wmlab
