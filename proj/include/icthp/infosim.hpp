#ifndef ICTHP_INFOSIM_HPP_
#define ICTHP_INFOSIM_HPP_

#include <vector>

#include "icthp/core.hpp"

namespace icthp {

/// Analytic information-decomposition state: total image information splits
/// into the text-shared part i_vt and the image-only surplus i_v_extra.
/// i_star is the saturation level; i_extra_max bounds the surplus.
struct InfoState {
  double i_t = 1.0;
  double i_vt = 0.0;
  double i_v_extra = 0.0;
  double i_star = 1.0;
  double i_extra_max = 0.0;

  double i_v() const { return i_vt + i_v_extra; }
};

/// Cosine-style alignment proxy i_vt / sqrt(i_t * (i_vt + i_v_extra)).
/// Grows while the shared part grows, then decays as surplus detail
/// inflates the denominator.
double clip_proxy(const InfoState& state);

/// Smallest proxy value over all saturated states:
/// i_star / sqrt((i_star + i_extra_max) * i_t). Clamping at or below this
/// threshold maps every saturated state to a containment score of 1.
double critical_threshold(double i_star, double i_extra_max, double i_t);

enum class SaturationModel {
  HardMin,  // i_vt = min(i_v, i_star)
  SoftMin,  // smooth log-sum-exp variant
};

struct CurvePoint {
  double i_v = 0.0;
  double clip_proxy = 0.0;
  double ict_proxy = 0.0;
};

/// Sweeps total image information at fixed text information (saturation
/// level = i_t) and reports the alignment proxy plus its clamped
/// containment transform.
std::vector<CurvePoint> simulate_information_curve(
    double i_t, const std::vector<double>& i_v_sweep, double theta,
    SaturationModel model = SaturationModel::HardMin, double softness = 20.0);

/// Monotone bounded surplus-to-preference map used for simulator plots.
double hp_proxy(double i_v_extra);

/// Deterministic triplet generator realizing the scoring paradox in vector
/// form. Per record (all vectors unit-norm, d >= 4):
///   prompt_easy  p: random direction orthogonal to the global detail and
///                  degradation axes
///   img3: p + rho * detail + noise, detail drawn near the global detail
///         axis and orthogonal to p -- rich image, cosine 1/sqrt(1+rho^2)
///   img2: p + noise -- plain well-aligned image
///   img1: weak alignment c1 in [0.15, 0.75) with most residual energy on
///         the degradation axis
///   prompt_ref: p rotated toward the detail axis
/// For rho >= 1 the rich image cosine drops below the plain image cosine
/// although img3 is the preferred construction. The detail/degradation
/// axes give images an intrinsic quality signature, so image-only ranking
/// is learnable.
ValidatedDataset synth_triplets(int n, int d, double rho_lo, double rho_hi,
                                double noise, SeededRng& rng);

}  // namespace icthp

#endif  // ICTHP_INFOSIM_HPP_
