#include "icthp/geometry.hpp"

#include <algorithm>

namespace icthp {

SimilarityValue cosine_similarity(const Embedding& a, const Embedding& b) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorCode::DimensionMismatch,
                "cosine_similarity: dims " + std::to_string(a.dim()) + " vs " +
                    std::to_string(b.dim()));
  }
  return SimilarityValue{a.values().dot(b.values())};
}

double scaled_score(const Embedding& text, const Embedding& image, double tau) {
  if (!(tau > 0)) {
    throw Error(ErrorCode::NonPositiveTemperature,
                "tau = " + std::to_string(tau) + " must be > 0");
  }
  return cosine_similarity(text, image).value / tau;
}

double threshold_containment(SimilarityValue sim, double theta) {
  if (!(theta > 0)) {
    throw Error(ErrorCode::NonPositiveThreshold,
                "theta = " + std::to_string(theta) + " must be > 0");
  }
  return std::clamp(sim.value / theta, 0.0, 1.0);
}

}  // namespace icthp
