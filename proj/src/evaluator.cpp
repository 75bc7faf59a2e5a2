#include "icthp/evaluator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <nlohmann/json.hpp>

namespace icthp {

PreferenceOutcome judge_pair(PairKind pair, double preferred, double other) {
  PreferenceOutcome out;
  out.pair = pair;
  if (std::abs(preferred - other) <= kTieTolerance) {
    out.credit = 0.5;
  } else {
    out.credit = preferred > other ? 1.0 : 0.0;
  }
  return out;
}

AccuracyTable pairwise_accuracy(const TripletScorer& scorer,
                                const std::vector<LabeledRecord>& records) {
  if (records.empty()) {
    throw Error(ErrorCode::EmptyDataset, "pairwise_accuracy on empty dataset");
  }
  const std::size_t n = records.size();
  std::vector<double> c21, c32, c31;
  c21.reserve(n);
  c32.reserve(n);
  c31.reserve(n);
  for (const auto& rec : records) {
    const auto s = scorer(rec);
    c21.push_back(judge_pair(PairKind::I2OverI1, s[1], s[0]).credit);
    c32.push_back(judge_pair(PairKind::I3OverI2, s[2], s[1]).credit);
    c31.push_back(judge_pair(PairKind::I3OverI1, s[2], s[0]).credit);
  }
  AccuracyTable t;
  const double dn = static_cast<double>(n);
  t.acc_21 = 100.0 * pairwise_sum(c21) / dn;
  t.acc_32 = 100.0 * pairwise_sum(c32) / dn;
  t.acc_31 = 100.0 * pairwise_sum(c31) / dn;
  t.mean = (t.acc_21 + t.acc_32 + t.acc_31) / 3.0;
  return t;
}

RewardRecord combined_reward(double ict_score, double hp_squashed) {
  if (!(hp_squashed > 0.0 && hp_squashed < 1.0)) {
    throw Error(ErrorCode::InvalidFlags,
                "hp factor must lie in (0,1), got " + std::to_string(hp_squashed));
  }
  RewardRecord out;
  out.ict = std::clamp(ict_score, 0.0, 1.0);
  out.hp = hp_squashed;
  out.combined = out.ict * out.hp;
  return out;
}

double bt_pair_probability(double s_j, double s_i) {
  const double delta = s_j - s_i;
  if (delta >= 0.0) {
    return 1.0 / (1.0 + std::exp(-delta));
  }
  const double e = std::exp(delta);
  return e / (1.0 + e);
}

namespace {

// log(sigmoid(x)) without overflow at either tail
double log_sigmoid(double x) {
  if (x >= 0.0) return -std::log1p(std::exp(-x));
  return x - std::log1p(std::exp(x));
}

}  // namespace

double bt_log_likelihood(const TripletScorer& scorer,
                         const std::vector<LabeledRecord>& records) {
  if (records.empty()) {
    throw Error(ErrorCode::EmptyDataset, "bt_log_likelihood on empty dataset");
  }
  std::vector<double> terms;
  terms.reserve(records.size() * 2);
  for (const auto& rec : records) {
    const auto s = scorer(rec);
    terms.push_back(log_sigmoid(s[1] - s[0]));
    terms.push_back(log_sigmoid(s[2] - s[1]));
  }
  return pairwise_sum(terms);
}

TripletScorer make_cosine_scorer() {
  return [](const LabeledRecord& rec) -> std::array<double, 3> {
    const auto& r = rec.record;
    return {cosine_similarity(r.img1, r.prompt_easy).value,
            cosine_similarity(r.img2, r.prompt_easy).value,
            cosine_similarity(r.img3, r.prompt_easy).value};
  };
}

TripletScorer make_ict_scorer(const HeadParams& params, double tau) {
  return [params, tau](const LabeledRecord& rec) -> std::array<double, 3> {
    const auto& r = rec.record;
    std::array<double, 3> out{};
    for (int k = 1; k <= 3; ++k) {
      out[k - 1] =
          std::clamp(forward_ict(params, r.prompt_easy, r.image(k), tau), 0.0, 1.0);
    }
    return out;
  };
}

TripletScorer make_hp_scorer(const HeadParams& params) {
  return [params](const LabeledRecord& rec) -> std::array<double, 3> {
    const auto& r = rec.record;
    return {forward_hp(params, r.img1).squashed,
            forward_hp(params, r.img2).squashed,
            forward_hp(params, r.img3).squashed};
  };
}

TripletScorer make_hp_raw_scorer(const HeadParams& params) {
  return [params](const LabeledRecord& rec) -> std::array<double, 3> {
    const auto& r = rec.record;
    return {forward_hp(params, r.img1).raw, forward_hp(params, r.img2).raw,
            forward_hp(params, r.img3).raw};
  };
}

TripletScorer make_combined_scorer(const HeadParams& ict_params,
                                   const HeadParams& hp_params, double tau) {
  return [ict_params, hp_params, tau](const LabeledRecord& rec) -> std::array<double, 3> {
    const auto& r = rec.record;
    std::array<double, 3> out{};
    for (int k = 1; k <= 3; ++k) {
      const double ict =
          forward_ict(ict_params, r.prompt_easy, r.image(k), tau);
      const double hp = forward_hp(hp_params, r.image(k)).squashed;
      out[k - 1] = combined_reward(ict, hp).combined;
    }
    return out;
  };
}

TripletScorer make_label_scorer() {
  return [](const LabeledRecord& rec) -> std::array<double, 3> {
    return {rec.labels.e1, rec.labels.e2, rec.labels.e3};
  };
}

namespace {

double round2(double percent) {
  return std::round(percent * 100.0) / 100.0;
}

nlohmann::json table_json(const AccuracyTable& t) {
  return nlohmann::json{{"acc_21", round2(t.acc_21)},
                        {"acc_32", round2(t.acc_32)},
                        {"acc_31", round2(t.acc_31)},
                        {"mean", round2(t.mean)}};
}

}  // namespace

nlohmann::json EvaluationReport::to_json(const RunConfig& config) const {
  nlohmann::json acc;
  for (const auto& entry : accuracies) {
    acc[entry.scorer] = table_json(entry.table);
  }
  nlohmann::json rew;
  const char* slots[3] = {"img1", "img2", "img3"};
  for (int k = 0; k < 3; ++k) {
    rew[slots[k]] = nlohmann::json{{"mean_ict", rewards[k].mean_ict},
                                   {"mean_hp", rewards[k].mean_hp},
                                   {"mean_combined", rewards[k].mean_combined}};
  }
  return nlohmann::json{{"config", config.to_json()},
                        {"config_hash", config_hash(config)},
                        {"count", count},
                        {"accuracy", acc},
                        {"rewards", rew},
                        {"bt_log_likelihood", bt_log_likelihood}};
}

std::string EvaluationReport::to_csv(const RunConfig& config) const {
  std::string out;
  out += "# config_hash=" + config_hash(config) + "\n";
  out += "# count=" + std::to_string(count) + "\n";
  out += "scorer,acc_21,acc_32,acc_31,mean\n";
  char line[256];
  for (const auto& entry : accuracies) {
    std::snprintf(line, sizeof(line), "%s,%.2f,%.2f,%.2f,%.2f\n",
                  entry.scorer.c_str(), entry.table.acc_21, entry.table.acc_32,
                  entry.table.acc_31, entry.table.mean);
    out += line;
  }
  return out;
}

EvaluationReport evaluate_run(const HeadParams& ict_params,
                              const HeadParams& hp_params,
                              const std::vector<LabeledRecord>& records,
                              const RunConfig& config) {
  if (records.empty()) {
    throw Error(ErrorCode::EmptyDataset, "evaluate_run on empty dataset");
  }
  EvaluationReport report;
  report.count = records.size();

  const auto cosine = make_cosine_scorer();
  const auto ict = make_ict_scorer(ict_params, config.tau);
  const auto hp = make_hp_scorer(hp_params);
  const auto combined = make_combined_scorer(ict_params, hp_params, config.tau);

  report.accuracies.push_back({"cosine_baseline", pairwise_accuracy(cosine, records)});
  report.accuracies.push_back({"ict", pairwise_accuracy(ict, records)});
  report.accuracies.push_back({"hp", pairwise_accuracy(hp, records)});
  report.accuracies.push_back({"ict_hp", pairwise_accuracy(combined, records)});

  std::array<std::vector<double>, 3> icts, hps, products;
  for (int k = 0; k < 3; ++k) {
    icts[k].reserve(records.size());
    hps[k].reserve(records.size());
    products[k].reserve(records.size());
  }
  for (const auto& rec : records) {
    const auto s_ict = ict(rec);
    const auto s_hp = hp(rec);
    for (int k = 0; k < 3; ++k) {
      const auto r = combined_reward(s_ict[k], s_hp[k]);
      icts[k].push_back(r.ict);
      hps[k].push_back(r.hp);
      products[k].push_back(r.combined);
    }
  }
  const double dn = static_cast<double>(records.size());
  for (int k = 0; k < 3; ++k) {
    report.rewards[k].mean_ict = pairwise_sum(icts[k]) / dn;
    report.rewards[k].mean_hp = pairwise_sum(hps[k]) / dn;
    report.rewards[k].mean_combined = pairwise_sum(products[k]) / dn;
  }

  report.bt_log_likelihood =
      bt_log_likelihood(make_hp_raw_scorer(hp_params), records);
  return report;
}

}  // namespace icthp
