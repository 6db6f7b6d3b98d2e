#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Core>

namespace wmlab {

/// Sub-stream tags. Each trial derives its independent draws from
/// `trial_seed.derive(tag)` so the order in which a trial consumes
/// randomness never couples two purposes.
enum class StreamTag : std::uint64_t {
  Key = 1,
  Sample = 2,
  Attack = 3,
  ChannelAttack = 4,
  ChannelDetect = 5,
  ChannelBefore = 6,
  Oracle = 7,
  Transform = 8,
  Challenge = 9,
  Coin = 10,
};

/// (master, stream_id) fully determines a draw sequence. Streams with
/// different ids are derived by hashing, so trial i never depends on
/// trial j having been run.
struct RngSeed {
  std::uint64_t master = 0;
  std::uint64_t stream_id = 0;

  [[nodiscard]] RngSeed derive(std::uint64_t tag) const;
  [[nodiscard]] RngSeed derive(StreamTag tag) const {
    return derive(static_cast<std::uint64_t>(tag));
  }

  friend bool operator==(const RngSeed&, const RngSeed&) = default;
};

std::uint64_t splitmix64(std::uint64_t x);

class Rng {
 public:
  explicit Rng(const RngSeed& seed);

  double gaussian() { return normal_(engine_); }
  /// Uniform on [0, 1).
  double uniform() { return unit_(engine_); }
  /// Uniform on the open interval (0, 1).
  double uniform_open();
  std::uint64_t next_u64() { return engine_(); }
  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);
  bool coin() { return (engine_() >> 63) != 0; }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> unit_{0.0, 1.0};
};

/// d i.i.d. standard normal coordinates (the unwatermarked Gauss()).
Eigen::VectorXd sample_std_gauss(Eigen::Index d, const RngSeed& seed);
Eigen::VectorXd sample_std_gauss(Eigen::Index d, Rng& rng);

}  // namespace wmlab
