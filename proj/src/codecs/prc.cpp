#include "wmlab/codecs/prc.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "wmlab/core/stats.hpp"

namespace wmlab {

namespace {

constexpr std::uint64_t kCodewordLabel = 1;
constexpr std::uint64_t kPadLabel = 2;

BitString apply_checks(const std::vector<PrcKey::Row>& rows, const BitString& bits) {
  BitString out(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    bool parity = false;
    for (auto j : rows[r]) parity ^= bits[j];
    out.set(r, parity);
  }
  return out;
}

}  // namespace

void PrcParams::validate() const {
  if (d < 1) throw InvalidArgument("prc: d must be >= 1");
  if (t < 1 || t > d) throw InvalidArgument("prc: t must satisfy 1 <= t <= d");
  if (w < 1 || w > d) throw InvalidArgument("prc: w must satisfy 1 <= w <= d");
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("prc: alpha must lie in (0, 1)");
}

PrcKey::PrcKey(const PrcParams& params, std::vector<Row> rows, BitString syndrome, BitString pad)
    : params_(params),
      rows_(std::move(rows)),
      syndrome_(std::move(syndrome)),
      pad_(std::move(pad)),
      threshold_(binomial_threshold(params.t, params.alpha)),
      system_(static_cast<std::size_t>(params.d), rows_, syndrome_) {
  if (!system_.consistent()) throw InternalError("prc: keyed parity system is inconsistent");
}

PrcKey PrcKey::generate(const PrcParams& params, const RngSeed& seed) {
  params.validate();
  Rng rng(seed.derive(1));
  std::vector<Row> rows(static_cast<std::size_t>(params.t));
  std::vector<std::uint32_t> pool(static_cast<std::size_t>(params.d));
  std::iota(pool.begin(), pool.end(), 0U);
  for (auto& row : rows) {
    // Partial Fisher-Yates: the first w entries become a uniform w-subset.
    for (int k = 0; k < params.w; ++k) {
      const auto j = static_cast<std::size_t>(k) + rng.below(pool.size() - static_cast<std::size_t>(k));
      std::swap(pool[static_cast<std::size_t>(k)], pool[j]);
    }
    row.assign(pool.begin(), pool.begin() + params.w);
    std::sort(row.begin(), row.end());
  }
  const KeyMaterial secret = key_material_from(seed.derive(2));
  const auto d = static_cast<std::size_t>(params.d);
  // The syndrome is the image of a keyed particular solution, so the
  // system is consistent by construction.
  BitString syndrome = apply_checks(rows, keystream(secret, d, kCodewordLabel));
  BitString pad = keystream(secret, d, kPadLabel);
  return PrcKey(params, std::move(rows), std::move(syndrome), std::move(pad));
}

PrcKey PrcKey::from_parts(const PrcParams& params, std::vector<Row> rows, BitString syndrome,
                          BitString pad) {
  params.validate();
  if (rows.size() != static_cast<std::size_t>(params.t)) {
    throw InvalidArgument("prc: expected " + std::to_string(params.t) + " parity rows");
  }
  for (auto& row : rows) {
    std::sort(row.begin(), row.end());
    if (row.size() != static_cast<std::size_t>(params.w) ||
        std::adjacent_find(row.begin(), row.end()) != row.end() ||
        (!row.empty() && row.back() >= static_cast<std::uint32_t>(params.d))) {
      throw InvalidArgument("prc: every parity row needs w distinct indices in [0, d)");
    }
  }
  require_same_dim(static_cast<long long>(syndrome.size()), params.t, "prc syndrome");
  require_same_dim(static_cast<long long>(pad.size()), params.d, "prc pad");
  return PrcKey(params, std::move(rows), std::move(syndrome), std::move(pad));
}

BitString PrcKey::sample_codeword(Rng& rng) const { return system_.sample_solution(rng); }

LatentPoint prc_sample(const PrcKey& key, const RngSeed& seed) {
  Rng rng(seed);
  const BitString bits = key.sample_codeword(rng) ^ key.pad();
  LatentPoint x(key.d());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double z = std::abs(rng.gaussian());
    x[i] = bits[static_cast<std::size_t>(i)] ? z : -z;
  }
  return x;
}

int prc_satisfied_checks(const PrcKey& key, const BitString& sign_bits) {
  require_same_dim(static_cast<long long>(sign_bits.size()), key.d(), "prc_satisfied_checks");
  const auto& rows = key.parity_rows();
  const auto& pad = key.pad();
  int satisfied = 0;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    bool parity = false;
    for (auto j : rows[r]) parity ^= (sign_bits[j] != pad[j]);
    if (parity == key.syndrome()[r]) ++satisfied;
  }
  return satisfied;
}

DetectorVerdict prc_detect(const PrcKey& key, const Eigen::Ref<const Eigen::VectorXd>& x) {
  require_same_dim(x.size(), key.d(), "prc_detect");
  return make_verdict(prc_satisfied_checks(key, signs(x)), static_cast<double>(key.threshold()));
}

double prc_check_satisfaction_probability(double flip_rate, int w) {
  return 0.5 + 0.5 * std::pow(1.0 - 2.0 * flip_rate, w);
}

int prc_guaranteed_radius(const PrcKey& key) {
  std::vector<int> column_weight(static_cast<std::size_t>(key.d()), 0);
  for (const auto& row : key.parity_rows()) {
    for (auto j : row) ++column_weight[j];
  }
  std::sort(column_weight.begin(), column_weight.end(), std::greater<>());
  const std::int64_t slack = key.t() - key.threshold();
  if (slack < 0) return 0;
  std::int64_t broken = 0;
  int h = 0;
  for (int wgt : column_weight) {
    if (broken + wgt > slack) break;
    broken += wgt;
    ++h;
  }
  return h;
}

}  // namespace wmlab
