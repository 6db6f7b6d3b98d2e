#include "wmlab/games/oracle.hpp"

#include <string>

namespace wmlab {

WatermarkOracle::WatermarkOracle(SchemePtr scheme, RngSeed stream, std::size_t budget)
    : scheme_(std::move(scheme)), stream_(stream), budget_(budget) {
  if (!scheme_) throw InvalidArgument("WatermarkOracle: null scheme");
}

LatentPoint WatermarkOracle::next() {
  if (queries_ >= budget_) {
    throw OracleBudgetExceeded("watermark oracle: budget of " + std::to_string(budget_) +
                               " queries exhausted");
  }
  return scheme_->sample(stream_.derive(static_cast<std::uint64_t>(queries_++)));
}

}  // namespace wmlab
