#ifndef ICTHP_GEOMETRY_HPP_
#define ICTHP_GEOMETRY_HPP_

#include "icthp/core.hpp"

namespace icthp {

/// Cosine of two unit vectors; stays in [-1-eps, 1+eps].
struct SimilarityValue {
  double value = 0.0;
};

/// Dot product of unit-norm embeddings. Symmetric bit for bit.
SimilarityValue cosine_similarity(const Embedding& a, const Embedding& b);

/// Two-tower score: cosine divided by the temperature.
double scaled_score(const Embedding& text, const Embedding& image, double tau);

/// Containment degree: sim/theta capped at 1 and floored at 0. The floor
/// keeps anti-aligned pairs inside the [0,1] label range.
double threshold_containment(SimilarityValue sim, double theta);

}  // namespace icthp

#endif  // ICTHP_GEOMETRY_HPP_
