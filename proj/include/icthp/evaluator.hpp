#ifndef ICTHP_EVALUATOR_HPP_
#define ICTHP_EVALUATOR_HPP_

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "icthp/labeler.hpp"
#include "icthp/trainer.hpp"

namespace icthp {

enum class PairKind { I2OverI1, I3OverI2, I3OverI1 };

/// Credit a single ordered comparison earns: 1 when the preferred image
/// scores strictly higher, 0.5 on a tie (tolerance 1e-9), else 0.
struct PreferenceOutcome {
  PairKind pair = PairKind::I2OverI1;
  double credit = 0.0;
};

constexpr double kTieTolerance = 1e-9;

PreferenceOutcome judge_pair(PairKind pair, double preferred, double other);

/// Percent accuracies for the three ordered pairs; mean is their average.
struct AccuracyTable {
  double acc_21 = 0.0;
  double acc_32 = 0.0;
  double acc_31 = 0.0;
  double mean = 0.0;
};

/// Maps a labeled triplet to scores for (img1, img2, img3).
using TripletScorer = std::function<std::array<double, 3>(const LabeledRecord&)>;

AccuracyTable pairwise_accuracy(const TripletScorer& scorer,
                                const std::vector<LabeledRecord>& records);

/// Product reward; the containment factor is clamped to [0,1] first, so
/// either factor near zero pulls the whole reward to zero.
struct RewardRecord {
  double ict = 0.0;
  double hp = 0.0;
  double combined = 0.0;
};

RewardRecord combined_reward(double ict_score, double hp_squashed);

/// Logistic preference probability of j beating i from the score gap.
double bt_pair_probability(double s_j, double s_i);

/// Sum over triplets of log P(img2 beats img1) + log P(img3 beats img2).
double bt_log_likelihood(const TripletScorer& scorer,
                         const std::vector<LabeledRecord>& records);

// Scorer factories. Parameters are captured by value so the scorer owns
// everything it needs.
TripletScorer make_cosine_scorer();
TripletScorer make_ict_scorer(const HeadParams& params, double tau);  // clamped
TripletScorer make_hp_scorer(const HeadParams& params);               // squashed
TripletScorer make_hp_raw_scorer(const HeadParams& params);
TripletScorer make_combined_scorer(const HeadParams& ict_params,
                                   const HeadParams& hp_params, double tau);
TripletScorer make_label_scorer();  // ground-truth basic labels

struct ScorerAccuracy {
  std::string scorer;
  AccuracyTable table;
};

/// Dataset means per image slot. mean_combined averages per-sample
/// products, which is not the product of the means.
struct RewardSummary {
  double mean_ict = 0.0;
  double mean_hp = 0.0;
  double mean_combined = 0.0;
};

struct EvaluationReport {
  std::vector<ScorerAccuracy> accuracies;
  std::array<RewardSummary, 3> rewards{};  // img1, img2, img3
  double bt_log_likelihood = 0.0;          // image-only raw scores
  std::size_t count = 0;

  nlohmann::json to_json(const RunConfig& config) const;
  std::string to_csv(const RunConfig& config) const;
};

/// Full protocol: accuracy tables for the cosine baseline and the three
/// model scorers, per-slot reward means, and the preference log-likelihood.
EvaluationReport evaluate_run(const HeadParams& ict_params,
                              const HeadParams& hp_params,
                              const std::vector<LabeledRecord>& records,
                              const RunConfig& config);

}  // namespace icthp

#endif  // ICTHP_EVALUATOR_HPP_
