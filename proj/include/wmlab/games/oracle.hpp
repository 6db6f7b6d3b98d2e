#pragma once

#include <cstddef>
#include <limits>
#include <stdexcept>

#include "wmlab/codecs/scheme.hpp"

namespace wmlab {

struct OracleBudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Non-adaptive source of fresh watermarked samples under the victim key.
/// Query i uses stream.derive(i), so outputs do not depend on anything the
/// caller does between queries.
class WatermarkOracle {
 public:
  static constexpr std::size_t kUnlimited = std::numeric_limits<std::size_t>::max();

  WatermarkOracle(SchemePtr scheme, RngSeed stream, std::size_t budget = kUnlimited);

  LatentPoint next();
  LatentPoint operator()() { return next(); }

  [[nodiscard]] std::size_t queries() const { return queries_; }
  [[nodiscard]] std::size_t budget() const { return budget_; }
  [[nodiscard]] std::size_t remaining() const { return budget_ - queries_; }

 private:
  SchemePtr scheme_;
  RngSeed stream_;
  std::size_t budget_;
  std::size_t queries_ = 0;
};

}  // namespace wmlab
