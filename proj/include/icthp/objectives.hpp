#ifndef ICTHP_OBJECTIVES_HPP_
#define ICTHP_OBJECTIVES_HPP_

#include <array>

#include <Eigen/Core>

#include "icthp/core.hpp"

namespace icthp {

/// Predicted scores of one batch against basic and refined prompts.
/// Entry (i, j) scores the image of sample i against the prompt of sample
/// j; the diagonal holds the positive-pair predictions.
struct ScoreMatrix {
  Eigen::MatrixXd easy;
  Eigen::MatrixXd refined;

  int n() const { return static_cast<int>(easy.rows()); }
  void check() const;  // square, equal sizes
};

/// Squared-error regression loss on the six positive predictions
/// (y1e..y3e, y1r..y3r) against the six labels, plus its gradient.
struct IctLossResult {
  double value = 0.0;
  std::array<double, 6> grad{};  // d value / d pred
};

IctLossResult ict_loss(const std::array<double, 6>& pred,
                       const ICTLabelSet& labels);

/// Sigmoid false-negative down-weight w(y) = 1 / (1 + exp(alpha(|y| - beta))).
/// Exponents beyond +-700 clamp to the limiting weight.
double negative_weight(double y, double alpha, double beta);

/// One weighted negative term w(y) y^2 and its derivative, differentiating
/// through the weight itself.
struct NegTerm {
  double value = 0.0;
  double dvalue = 0.0;  // d/dy [w(y) y^2]
};

NegTerm negative_term(double y, double alpha, double beta);

struct NegativeLossResult {
  double value = 0.0;
  Eigen::MatrixXd grad_easy;     // zero on the diagonal
  Eigen::MatrixXd grad_refined;
  bool batch_too_small = false;  // n < 2: no negatives exist, loss is 0
};

/// Weighted sum of squared off-diagonal scores in both matrices.
NegativeLossResult negative_loss(const ScoreMatrix& scores, double alpha,
                                 double beta);

double total_loss(double l_ict, double l_neg, double lambda);

/// Two-hinge ranking loss over a score triple; the subgradient at a hinge
/// kink is 0. `active` reports which hinges contributed.
struct MarginLossResult {
  double value = 0.0;
  std::array<double, 3> grad{};  // d value / d (s1, s2, s3)
  std::array<bool, 2> active{};
  double min_kink_distance = 0.0;  // min |hinge argument|
};

MarginLossResult margin_loss(double s1, double s2, double s3, double m);

/// Per-batch summary a trainer step produces. For the regression stage
/// l_total = l_ict + lambda * l_neg; for the ranking stage l_total = l_margin.
struct LossReport {
  double l_ict = 0.0;
  double l_neg = 0.0;
  double l_margin = 0.0;
  double l_total = 0.0;
  Eigen::VectorXd gradient;  // aligned with HeadParams::pack()
};

}  // namespace icthp

#endif  // ICTHP_OBJECTIVES_HPP_
