#pragma once

namespace wmlab {

struct DetectorVerdict {
  bool watermarked = false;
  /// Satisfied-check count (PRC) or message-bit agreement (GS).
  double statistic = 0.0;
  double threshold = 0.0;
};

inline DetectorVerdict make_verdict(double statistic, double threshold) {
  return {statistic >= threshold, statistic, threshold};
}

}  // namespace wmlab
