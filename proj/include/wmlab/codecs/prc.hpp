#pragma once

// Sparse-parity surrogate for a pseudorandom error-correcting code.
//
// The key holds t secret parity checks of weight w over the d sign bits,
// a syndrome and a one-time pad. Sampling draws a uniform solution of the
// parity system, masks it with the pad and embeds it in the signs of a
// half-normal vector. Detection counts satisfied checks and compares the
// count with an exact binomial threshold calibrated to the false-alarm
// target alpha.
//
// This is a zero-bit code with the same interface and robustness profile
// as the LDPC-based construction (per-check satisfaction 1/2 + 1/2 (1-2p)^w
// under i.i.d. flip rate p). It makes no hardness claim.

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "wmlab/codecs/gf2.hpp"
#include "wmlab/codecs/keystream.hpp"
#include "wmlab/codecs/verdict.hpp"
#include "wmlab/core/bitstring.hpp"
#include "wmlab/core/latent.hpp"
#include "wmlab/core/rng.hpp"

namespace wmlab {

struct PrcParams {
  int d = 1024;
  int t = 64;
  int w = 3;
  double alpha = 0.01;

  void validate() const;
};

class PrcKey {
 public:
  using Row = std::vector<std::uint32_t>;

  static PrcKey generate(const PrcParams& params, const RngSeed& seed);
  /// Rebuild from stored parts (deserialization). Validates structure.
  static PrcKey from_parts(const PrcParams& params, std::vector<Row> rows, BitString syndrome,
                           BitString pad);

  [[nodiscard]] const PrcParams& params() const { return params_; }
  [[nodiscard]] int d() const { return params_.d; }
  [[nodiscard]] int t() const { return params_.t; }
  [[nodiscard]] int w() const { return params_.w; }
  [[nodiscard]] double alpha() const { return params_.alpha; }
  [[nodiscard]] const std::vector<Row>& parity_rows() const { return rows_; }
  [[nodiscard]] const BitString& syndrome() const { return syndrome_; }
  [[nodiscard]] const BitString& pad() const { return pad_; }
  /// Detection threshold on the satisfied-check count.
  [[nodiscard]] std::int64_t threshold() const { return threshold_; }

  /// Uniform solution c of the keyed parity system (before the pad).
  [[nodiscard]] BitString sample_codeword(Rng& rng) const;

  friend bool operator==(const PrcKey& a, const PrcKey& b) {
    return a.rows_ == b.rows_ && a.syndrome_ == b.syndrome_ && a.pad_ == b.pad_ &&
           a.params_.d == b.params_.d && a.params_.t == b.params_.t &&
           a.params_.w == b.params_.w && a.params_.alpha == b.params_.alpha;
  }

 private:
  PrcKey(const PrcParams& params, std::vector<Row> rows, BitString syndrome, BitString pad);

  PrcParams params_;
  std::vector<Row> rows_;
  BitString syndrome_;
  BitString pad_;
  std::int64_t threshold_ = 0;
  Gf2System system_;
};

LatentPoint prc_sample(const PrcKey& key, const RngSeed& seed);

/// Number of parity rows satisfied by `sign_bits` xor pad.
int prc_satisfied_checks(const PrcKey& key, const BitString& sign_bits);

DetectorVerdict prc_detect(const PrcKey& key, const Eigen::Ref<const Eigen::VectorXd>& x);

/// The detector-preserving projection: the sign pattern.
inline BitString prc_map(const Eigen::Ref<const Eigen::VectorXd>& x) { return signs(x); }

/// P[a weight-w check stays satisfied] under i.i.d. sign flips at rate p.
double prc_check_satisfaction_probability(double flip_rate, int w);

/// Largest h such that no h flips can break more than t - threshold checks,
/// bounded via the h heaviest column weights (each flip breaks at most the
/// checks that contain its index). A sufficient, key-specific radius.
int prc_guaranteed_radius(const PrcKey& key);

}  // namespace wmlab
