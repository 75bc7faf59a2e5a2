#ifndef ICTHP_TRAINER_HPP_
#define ICTHP_TRAINER_HPP_

#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "icthp/labeler.hpp"
#include "icthp/objectives.hpp"

namespace icthp {

/// Trainable heads over frozen embeddings: a pair of d x d projections for
/// the two-tower containment score and a d -> hidden -> 1 perceptron for
/// the image-only preference score.
struct HeadParams {
  Eigen::MatrixXd ict_text_proj;   // d x d
  Eigen::MatrixXd ict_image_proj;  // d x d
  Eigen::MatrixXd hp_w1;           // hidden x d
  Eigen::VectorXd hp_b1;           // hidden
  Eigen::VectorXd hp_w2;           // hidden
  double hp_b2 = 0.0;

  int dim() const { return static_cast<int>(ict_text_proj.rows()); }
  int hidden_width() const { return static_cast<int>(hp_w1.rows()); }
  // 2 d^2 + (d + 1) hidden + hidden + 1
  std::size_t parameter_count() const;

  /// Flat parameter vector in checkpoint order: text proj row-major, image
  /// proj row-major, hp_w1 row-major, hp_b1, hp_w2, hp_b2.
  Eigen::VectorXd pack() const;
  static HeadParams unpack(int d, int hidden, const Eigen::VectorXd& flat);

  bool all_finite() const;
};

/// Identity-plus-noise projections (noise stddev proj_noise_scale/sqrt(d)),
/// symmetric fan-in uniform MLP weights, zero biases.
HeadParams init_heads(int d, int hidden_width, SeededRng& rng,
                      double proj_noise_scale = 0.01);

/// Two-tower score: cosine of the projected (re-normalized) embeddings over
/// the temperature. Throws DegenerateProjection when a projection collapses.
double forward_ict(const HeadParams& params, const Embedding& text,
                   const Embedding& image, double tau);

struct HpScore {
  double raw = 0.0;       // unbounded head output; ranking happens here
  double squashed = 0.0;  // logistic of raw, in (0,1), for reward composition
};

HpScore forward_hp(const HeadParams& params, const Embedding& image);

struct EpochStats {
  double l_ict = 0.0;
  double l_neg = 0.0;
  double l_total = 0.0;
  double l_margin = 0.0;
  double acc_21 = 0.0;
  double acc_32 = 0.0;
  double acc_31 = 0.0;
  double acc_mean = 0.0;
  double bt_log_likelihood = 0.0;
  int small_batches = 0;      // batches with no in-batch negatives
  double wall_seconds = 0.0;  // in-memory only, excluded from serialization
};

struct TrainHistory {
  std::string stage;  // "ict" or "hp"
  std::vector<EpochStats> epochs;

  /// Deterministic JSON (timing omitted so reruns byte-match).
  nlohmann::json to_json() const;
};

/// Batch loss + gradient for the regression stage: squared error on the six
/// positive scores of every sample plus weighted in-batch negatives across
/// samples. Losses are sums, matching their definitions.
LossReport ict_batch_loss(const HeadParams& params,
                          std::span<const LabeledRecord* const> batch,
                          const RunConfig& config);

struct HpBatchLoss {
  double l_margin = 0.0;
  Eigen::VectorXd gradient;       // packed layout; projection block is zero
  std::uint64_t hinge_signature = 0;
  double min_kink_distance = 0.0;
};

HpBatchLoss hp_batch_loss(const HeadParams& params,
                          std::span<const TripletRecord* const> batch,
                          const RunConfig& config);

/// Stage 1: fit both projections to the precomputed labels with
/// adaptive-moment descent. Deterministic for fixed (seed, config, data).
std::pair<HeadParams, TrainHistory> train_ict(
    const std::vector<LabeledRecord>& dataset, const RunConfig& config);

/// Stage 2: train only the perceptron with the ranking loss on raw scores;
/// the projections are copied from ict_params and never touched.
std::pair<HeadParams, TrainHistory> train_hp(
    const std::vector<LabeledRecord>& dataset, const HeadParams& ict_params,
    const RunConfig& config);

enum class FiniteDiffStage { Ict, Hp };

struct FiniteDiffReport {
  double max_rel_error = 0.0;        // coords with gradient scale >= 1e-4
  double max_abs_error_small = 0.0;  // coords below that scale
  int checked = 0;
  int excluded = 0;  // coords whose probe crossed or touched a hinge kink
};

/// Central-difference check of the analytic batch gradient on a random
/// subset of up to 200 coordinates.
FiniteDiffReport finite_diff_check(const HeadParams& params,
                                   const std::vector<LabeledRecord>& batch,
                                   const RunConfig& config, double epsilon,
                                   FiniteDiffStage stage, SeededRng& rng);

/// Binary checkpoint: magic "ICTH", version, d, hidden_width, then the
/// packed parameters as little-endian doubles.
void save_checkpoint(const std::string& path, const HeadParams& params);
HeadParams load_checkpoint(const std::string& path);

}  // namespace icthp

#endif  // ICTHP_TRAINER_HPP_
