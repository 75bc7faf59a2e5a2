#include "icthp/labeler.hpp"

#include <algorithm>

namespace icthp {

std::array<double, 3> basic_labels(const TripletRecord& record, double theta) {
  const double c2 =
      threshold_containment(cosine_similarity(record.img2, record.prompt_easy), theta);
  const double c1 =
      threshold_containment(cosine_similarity(record.img1, record.prompt_easy), theta);
  return {std::min(c1, c2), c2, 1.0};
}

std::array<double, 3> refined_labels(const std::array<double, 3>& e,
                                     SimilarityValue text_sim) {
  // Negative prompt-pair similarity means corrupted data rather than a
  // meaningful label; the multiplier is clamped into [0,1].
  const double ts = std::clamp(text_sim.value, 0.0, 1.0);
  return {e[0] * ts, e[1] * ts, 1.0};
}

ICTLabelSet make_label_set(const std::array<double, 3>& e,
                           const std::array<double, 3>& r) {
  ICTLabelSet out;
  out.e1 = e[0];
  out.e2 = e[1];
  out.e3 = e[2];
  out.r1 = r[0];
  out.r2 = r[1];
  out.r3 = r[2];
  return out;
}

LabelOutcome label_dataset(const ValidatedDataset& dataset,
                           const RunConfig& config) {
  LabelOutcome out;
  out.records.reserve(dataset.size());
  for (const auto& record : dataset.records()) {
    try {
      const auto e = basic_labels(record, config.theta);
      const auto ts = cosine_similarity(record.prompt_easy, record.prompt_ref);
      const auto r = refined_labels(e, ts);
      out.records.push_back({record, make_label_set(e, r), ts});
    } catch (const Error& err) {
      out.failures.push_back({record.id, err.code(), err.what()});
    }
  }
  return out;
}

}  // namespace icthp
