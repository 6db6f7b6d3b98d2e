#pragma once

// Gaussian Shading at one bit per coefficient: the m-bit designated
// message is tiled d/m times (position i carries message bit i mod m),
// encrypted with a keyed stream, and each encrypted bit selects the
// negative or positive half of N(0, 1) via the inverse CDF.

#include <cstdint>

#include <Eigen/Core>

#include "wmlab/codecs/keystream.hpp"
#include "wmlab/codecs/verdict.hpp"
#include "wmlab/core/bitstring.hpp"
#include "wmlab/core/latent.hpp"
#include "wmlab/core/rng.hpp"

namespace wmlab {

struct GsParams {
  int d = 1024;
  int m = 64;
  double alpha = 0.01;

  void validate() const;
};

class GsKey {
 public:
  static GsKey generate(const GsParams& params, const RngSeed& seed);
  static GsKey from_parts(const GsParams& params, const KeyMaterial& stream_key,
                          BitString message);

  [[nodiscard]] const GsParams& params() const { return params_; }
  [[nodiscard]] int d() const { return params_.d; }
  [[nodiscard]] int m() const { return params_.m; }
  [[nodiscard]] double alpha() const { return params_.alpha; }
  [[nodiscard]] int repetitions() const { return params_.d / params_.m; }
  [[nodiscard]] const KeyMaterial& stream_key() const { return stream_key_; }
  [[nodiscard]] const BitString& message() const { return message_; }
  [[nodiscard]] const BitString& stream() const { return stream_; }
  /// Tiled message xor keystream: the sign pattern of every sample.
  [[nodiscard]] const BitString& encrypted_bits() const { return encrypted_; }
  [[nodiscard]] std::int64_t threshold() const { return threshold_; }

  friend bool operator==(const GsKey& a, const GsKey& b) {
    return a.stream_key_ == b.stream_key_ && a.message_ == b.message_ &&
           a.params_.d == b.params_.d && a.params_.m == b.params_.m &&
           a.params_.alpha == b.params_.alpha;
  }

 private:
  GsKey(const GsParams& params, const KeyMaterial& stream_key, BitString message);

  GsParams params_;
  KeyMaterial stream_key_{};
  BitString message_;
  BitString stream_;
  BitString encrypted_;
  std::int64_t threshold_ = 0;
};

LatentPoint gs_sample(const GsKey& key, const RngSeed& seed);

struct GsDecoding {
  /// Majority-decoded message; tied groups decode to 0.
  BitString message;
  /// Positions whose repetition group was an exact tie.
  BitString tied;
};

GsDecoding gs_decode(const GsKey& key, const Eigen::Ref<const Eigen::VectorXd>& x);

/// statistic = number of message positions whose strict majority agrees
/// with the designated message. Tied groups never count as agreement.
DetectorVerdict gs_detect(const GsKey& key, const Eigen::Ref<const Eigen::VectorXd>& x);

}  // namespace wmlab
