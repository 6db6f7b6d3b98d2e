#include "wmlab/defense/well_behaved.hpp"

#include <numeric>
#include <string>

#include "wmlab/core/errors.hpp"

namespace wmlab {

std::uint64_t ProbeReport::total_tested() const {
  return std::accumulate(tested.begin(), tested.end(), std::uint64_t{0});
}

std::uint64_t ProbeReport::total_failures() const {
  return std::accumulate(failures.begin(), failures.end(), std::uint64_t{0});
}

double ProbeReport::failure_fraction() const {
  const auto n = total_tested();
  return n == 0 ? 0.0 : static_cast<double>(total_failures()) / static_cast<double>(n);
}

std::optional<int> ProbeReport::first_failing_distance() const {
  for (std::size_t h = 0; h < failures.size(); ++h) {
    if (failures[h] > 0) return static_cast<int>(h);
  }
  return std::nullopt;
}

std::uint64_t exhaustive_pattern_count(int d, int gamma_bits) {
  if (d < 1 || gamma_bits < 0) throw InvalidArgument("exhaustive_pattern_count: bad arguments");
  std::uint64_t total = 0;
  std::uint64_t binom = 1;  // C(d, h)
  for (int h = 0; h <= gamma_bits && h <= d; ++h) {
    total += binom;
    binom = binom * static_cast<std::uint64_t>(d - h) / static_cast<std::uint64_t>(h + 1);
  }
  return total;
}

namespace {

// Visits every h-subset of [0, d) in lexicographic order.
template <typename Fn>
void for_each_subset(int d, int h, std::vector<Eigen::Index>& idx, Fn&& fn) {
  idx.resize(static_cast<std::size_t>(h));
  std::iota(idx.begin(), idx.end(), Eigen::Index{0});
  if (h > d) return;
  while (true) {
    fn(idx);
    int k = h - 1;
    while (k >= 0 && idx[static_cast<std::size_t>(k)] == d - h + k) --k;
    if (k < 0) return;
    ++idx[static_cast<std::size_t>(k)];
    for (int j = k + 1; j < h; ++j) {
      idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
}

void random_subset(int d, int h, Rng& rng, std::vector<Eigen::Index>& pool,
                   std::vector<Eigen::Index>& out) {
  pool.resize(static_cast<std::size_t>(d));
  std::iota(pool.begin(), pool.end(), Eigen::Index{0});
  out.clear();
  for (int k = 0; k < h; ++k) {
    const auto j = static_cast<std::size_t>(k) + rng.below(static_cast<std::uint64_t>(d - k));
    std::swap(pool[static_cast<std::size_t>(k)], pool[j]);
    out.push_back(pool[static_cast<std::size_t>(k)]);
  }
}

}  // namespace

ProbeReport well_behaved_probe(const WatermarkScheme& codec, const ProbeOptions& options) {
  const int d = static_cast<int>(codec.dim());
  const int gamma = options.gamma_bits;
  if (gamma < 0) throw InvalidArgument("well_behaved_probe: gamma_bits must be >= 0");
  if (gamma > d) throw InvalidArgument("well_behaved_probe: gamma_bits exceeds dimension");
  if (options.trials < 1) throw InvalidArgument("well_behaved_probe: trials must be >= 1");
  if (options.mode == ProbeMode::Exhaustive &&
      (d > kExhaustiveMaxDim || gamma > kExhaustiveMaxGamma)) {
    throw InvalidArgument("well_behaved_probe: exhaustive mode would test " +
                          std::to_string(exhaustive_pattern_count(d, gamma)) +
                          " patterns per trial; limit is d <= " +
                          std::to_string(kExhaustiveMaxDim) + " and gamma_bits <= " +
                          std::to_string(kExhaustiveMaxGamma) + " (use sampled mode)");
  }
  if (options.mode == ProbeMode::Sampled && options.samples_per_distance < 1) {
    throw InvalidArgument("well_behaved_probe: samples_per_distance must be >= 1");
  }

  ProbeReport report;
  report.gamma_bits = gamma;
  report.mode = options.mode;
  report.tested.assign(static_cast<std::size_t>(gamma) + 1, 0);
  report.failures.assign(static_cast<std::size_t>(gamma) + 1, 0);

  std::vector<Eigen::Index> idx;
  std::vector<Eigen::Index> pool;
  for (int trial = 0; trial < options.trials; ++trial) {
    const RngSeed trial_seed = options.seed.derive(static_cast<std::uint64_t>(trial));
    const LatentPoint x = codec.sample(trial_seed.derive(StreamTag::Sample));
    LatentPoint probe = x;

    // Negating a coordinate flips its sign bit and keeps its magnitude.
    auto check = [&](const std::vector<Eigen::Index>& flips) {
      for (auto i : flips) probe[i] = -probe[i];
      const bool ok = codec.detect(probe).watermarked;
      for (auto i : flips) probe[i] = x[i];
      const auto h = flips.size();
      ++report.tested[h];
      if (!ok) ++report.failures[h];
    };

    if (options.mode == ProbeMode::Exhaustive) {
      for (int h = 0; h <= gamma; ++h) for_each_subset(d, h, idx, check);
    } else {
      Rng rng(trial_seed.derive(StreamTag::Attack));
      check({});
      for (int h = 1; h <= gamma; ++h) {
        for (int k = 0; k < options.samples_per_distance; ++k) {
          random_subset(d, h, rng, pool, idx);
          check(idx);
        }
      }
    }
  }
  return report;
}

}  // namespace wmlab
