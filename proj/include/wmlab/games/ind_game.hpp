#pragma once

#include <cstdint>
#include <functional>

#include "wmlab/core/stats.hpp"
#include "wmlab/games/oracle.hpp"
#include "wmlab/games/removal_game.hpp"

namespace wmlab {

/// Guesses b (1 = watermarked) from the challenge, with oracle access.
using Distinguisher = std::function<int(const LatentPoint& challenge, WatermarkOracle& oracle)>;

struct IndResult {
  std::int64_t wins = 0;
  std::int64_t trials = 0;
  double win_rate = 0.0;
  Interval ci{};
};

/// Per trial: fresh key, fair bit b, challenge Gauss() if b = 0 else a
/// watermarked sample, then the distinguisher guesses with at most
/// `oracle_budget` oracle queries.
IndResult ind_game(const SchemeConfig& scheme, const Distinguisher& distinguisher, int trials,
                   std::size_t oracle_budget, std::uint64_t master_seed,
                   double confidence = 0.95);

Distinguisher constant_distinguisher(int guess);

/// One oracle copy; guess 1 when the challenge's sign pattern agrees with
/// the copy's on at least `agreement_threshold` of the coordinates.
/// Guesses 0 when the oracle budget is zero.
Distinguisher sign_correlation_distinguisher(double agreement_threshold = 0.75);

}  // namespace wmlab
