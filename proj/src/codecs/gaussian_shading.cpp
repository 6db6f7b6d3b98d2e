#include "wmlab/codecs/gaussian_shading.hpp"

#include <vector>

#include "wmlab/core/stats.hpp"

namespace wmlab {

namespace {
constexpr std::uint64_t kStreamLabel = 7;
}

void GsParams::validate() const {
  if (d < 1) throw InvalidArgument("gs: d must be >= 1");
  if (m < 1 || m > d) throw InvalidArgument("gs: m must satisfy 1 <= m <= d");
  if (d % m != 0) throw InvalidArgument("gs: m must divide d");
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("gs: alpha must lie in (0, 1)");
}

GsKey::GsKey(const GsParams& params, const KeyMaterial& stream_key, BitString message)
    : params_(params),
      stream_key_(stream_key),
      message_(std::move(message)),
      stream_(keystream(stream_key_, static_cast<std::size_t>(params.d), kStreamLabel)),
      encrypted_(static_cast<std::size_t>(params.d)),
      threshold_(binomial_threshold(params.m, params.alpha)) {
  const auto m = static_cast<std::size_t>(params_.m);
  for (std::size_t i = 0; i < encrypted_.size(); ++i) {
    encrypted_.set(i, message_[i % m] != stream_[i]);
  }
}

GsKey GsKey::generate(const GsParams& params, const RngSeed& seed) {
  params.validate();
  Rng rng(seed.derive(1));
  BitString message(static_cast<std::size_t>(params.m));
  for (std::size_t j = 0; j < message.size(); ++j) message.set(j, rng.coin());
  return GsKey(params, key_material_from(seed.derive(2)), std::move(message));
}

GsKey GsKey::from_parts(const GsParams& params, const KeyMaterial& stream_key,
                        BitString message) {
  params.validate();
  require_same_dim(static_cast<long long>(message.size()), params.m, "gs message");
  return GsKey(params, stream_key, std::move(message));
}

LatentPoint gs_sample(const GsKey& key, const RngSeed& seed) {
  Rng rng(seed);
  const auto& c = key.encrypted_bits();
  LatentPoint x(key.d());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    // Open-interval u keeps the quantile away from 0 and 1/2, so the sign
    // of x_i always equals c_i.
    const double u = rng.uniform_open();
    const double ci = c[static_cast<std::size_t>(i)] ? 1.0 : 0.0;
    x[i] = std_normal_inv_cdf((ci + u) / 2.0);
  }
  return x;
}

GsDecoding gs_decode(const GsKey& key, const Eigen::Ref<const Eigen::VectorXd>& x) {
  require_same_dim(x.size(), key.d(), "gs_detect");
  const auto m = static_cast<std::size_t>(key.m());
  std::vector<int> votes(m, 0);  // (#ones - #zeros) per message position
  const BitString bits = signs(x) ^ key.stream();
  for (std::size_t i = 0; i < bits.size(); ++i) votes[i % m] += bits[i] ? 1 : -1;
  GsDecoding out{BitString(m), BitString(m)};
  for (std::size_t j = 0; j < m; ++j) {
    out.message.set(j, votes[j] > 0);
    out.tied.set(j, votes[j] == 0);
  }
  return out;
}

DetectorVerdict gs_detect(const GsKey& key, const Eigen::Ref<const Eigen::VectorXd>& x) {
  const GsDecoding dec = gs_decode(key, x);
  int agree = 0;
  for (std::size_t j = 0; j < dec.message.size(); ++j) {
    if (!dec.tied[j] && dec.message[j] == key.message()[j]) ++agree;
  }
  return make_verdict(agree, static_cast<double>(key.threshold()));
}

}  // namespace wmlab
