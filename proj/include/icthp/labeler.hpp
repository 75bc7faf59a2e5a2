#ifndef ICTHP_LABELER_HPP_
#define ICTHP_LABELER_HPP_

#include <array>

#include "icthp/core.hpp"
#include "icthp/geometry.hpp"

namespace icthp {

/// A triplet together with its ground-truth labels and the prompt-pair
/// similarity the refined labels were scaled by.
struct LabeledRecord {
  TripletRecord record;
  ICTLabelSet labels;
  SimilarityValue text_sim;
};

struct LabelFailure {
  std::string id;
  ErrorCode code;
  std::string message;
};

struct LabelOutcome {
  std::vector<LabeledRecord> records;  // input order, failures skipped
  std::vector<LabelFailure> failures;
};

/// Basic-prompt labels (e1, e2, e3). e3 is pinned to 1; e2 is the
/// containment of img2; e1 is img1's containment capped by e2, so the
/// tuple is non-decreasing by construction.
std::array<double, 3> basic_labels(const TripletRecord& record, double theta);

/// Refined-prompt labels (r1, r2, r3): the basic labels scaled by the
/// prompt-pair similarity (clamped to [0,1]), with r3 pinned to 1.
std::array<double, 3> refined_labels(const std::array<double, 3>& e,
                                     SimilarityValue text_sim);

ICTLabelSet make_label_set(const std::array<double, 3>& e,
                           const std::array<double, 3>& r);

/// Labels every record. Per-record failures are collected with ids instead
/// of aborting the batch.
LabelOutcome label_dataset(const ValidatedDataset& dataset,
                           const RunConfig& config);

}  // namespace icthp

#endif  // ICTHP_LABELER_HPP_
