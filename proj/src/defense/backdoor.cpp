#include "wmlab/defense/backdoor.hpp"

#include <limits>

#include "wmlab/core/errors.hpp"

namespace wmlab {

double cosine_similarity(const Eigen::Ref<const Eigen::VectorXd>& a,
                         const Eigen::Ref<const Eigen::VectorXd>& b) {
  require_same_dim(a.size(), b.size(), "cosine_similarity");
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) throw DegenerateInput("cosine_similarity: zero vector");
  return a.dot(b) / (na * nb);
}

std::size_t nearest_issued(std::span<const LatentPoint> registry,
                           const Eigen::Ref<const Eigen::VectorXd>& x) {
  if (registry.empty()) throw InvalidArgument("nearest_issued: empty registry");
  std::size_t best = 0;
  double best_dist = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < registry.size(); ++i) {
    require_same_dim(registry[i].size(), x.size(), "nearest_issued");
    const double dist = (x - registry[i]).squaredNorm();
    if (dist < best_dist) {
      best_dist = dist;
      best = i;
    }
  }
  return best;
}

DetectorVerdict backdoored_detect(const WatermarkScheme& scheme,
                                  std::span<const LatentPoint> registry,
                                  const Eigen::Ref<const Eigen::VectorXd>& y, double eta,
                                  BackdoorDiagnostics* diagnostics) {
  if (!(eta > 0.0 && eta < 1.0)) throw InvalidArgument("backdoored_detect: eta must lie in (0, 1)");
  BackdoorDiagnostics diag;
  const DetectorVerdict base = scheme.detect(y);
  if (registry.size() >= 2) {
    const LatentPoint x = scheme.to_base(y);
    const std::size_t nearest = nearest_issued(registry, x);
    diag.nearest = nearest;
    const LatentPoint r = x - registry[nearest];
    const double rn = r.norm();
    if (rn > 0.0) {
      double best = -1.0;
      for (std::size_t i = 0; i < registry.size(); ++i) {
        for (std::size_t j = i + 1; j < registry.size(); ++j) {
          const LatentPoint pair = registry[i] + registry[j];
          const double pn = pair.norm();
          if (pn == 0.0) continue;
          best = std::max(best, r.dot(pair) / (rn * pn));
        }
      }
      diag.best_cosine = best;
      diag.fired = best > 1.0 - eta;
    }
  }
  if (diagnostics) *diagnostics = diag;
  if (diag.fired) {
    // Forced negative verdict; the threshold is set out of reach so that
    // watermarked == (statistic >= threshold) still holds.
    return {false, base.statistic, std::numeric_limits<double>::infinity()};
  }
  return base;
}

BackdooredDetector::BackdooredDetector(SchemePtr scheme, double eta, std::size_t capacity)
    : scheme_(std::move(scheme)), eta_(eta), capacity_(capacity) {
  if (!scheme_) throw InvalidArgument("BackdooredDetector: null scheme");
  if (!(eta > 0.0 && eta < 1.0)) throw InvalidArgument("BackdooredDetector: eta must lie in (0, 1)");
  if (capacity_ < 1 || capacity_ > kRegistryCapacity) {
    throw InvalidArgument("BackdooredDetector: capacity must lie in [1, 64]");
  }
}

void BackdooredDetector::register_issued(const Eigen::Ref<const Eigen::VectorXd>& w) {
  require_same_dim(w.size(), scheme_->dim(), "BackdooredDetector::register_issued");
  if (registry_.size() >= capacity_) throw InvalidArgument("BackdooredDetector: registry is full");
  registry_.emplace_back(w);
}

void BackdooredDetector::register_issued_output(const Eigen::Ref<const Eigen::VectorXd>& y) {
  register_issued(scheme_->to_base(y));
}

DetectorVerdict BackdooredDetector::detect(const Eigen::Ref<const Eigen::VectorXd>& y,
                                           BackdoorDiagnostics* diagnostics) const {
  return backdoored_detect(*scheme_, registry_, y, eta_, diagnostics);
}

}  // namespace wmlab
