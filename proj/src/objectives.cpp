#include "icthp/objectives.hpp"

#include <algorithm>
#include <cmath>

namespace icthp {

void ScoreMatrix::check() const {
  if (easy.rows() != easy.cols() || refined.rows() != refined.cols() ||
      easy.rows() != refined.rows()) {
    throw Error(ErrorCode::DimensionMismatch,
                "score matrices must be square and equally sized");
  }
}

IctLossResult ict_loss(const std::array<double, 6>& pred,
                       const ICTLabelSet& labels) {
  const std::array<double, 6> target = {labels.e1, labels.e2, labels.e3,
                                        labels.r1, labels.r2, labels.r3};
  IctLossResult out;
  for (int i = 0; i < 6; ++i) {
    const double diff = target[i] - pred[i];
    out.value += diff * diff;
    out.grad[i] = -2.0 * diff;
  }
  return out;
}

double negative_weight(double y, double alpha, double beta) {
  if (!(alpha > 0)) {
    throw Error(ErrorCode::InvalidConfig, "negative_weight: alpha must be > 0");
  }
  const double z = alpha * (std::abs(y) - beta);
  if (z > 700.0) return 0.0;
  if (z < -700.0) return 1.0;
  // Stable logistic of -z.
  if (z >= 0.0) {
    const double e = std::exp(-z);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(z));
}

NegTerm negative_term(double y, double alpha, double beta) {
  const double w = negative_weight(y, alpha, beta);
  // dw/dy = -alpha * sign(y) * w * (1 - w); the |y| kink at 0 is harmless
  // because it is multiplied by y^2.
  const double sign = (y > 0.0) - (y < 0.0);
  const double dw = -alpha * sign * w * (1.0 - w);
  NegTerm out;
  out.value = w * y * y;
  out.dvalue = dw * y * y + 2.0 * w * y;
  return out;
}

NegativeLossResult negative_loss(const ScoreMatrix& scores, double alpha,
                                 double beta) {
  scores.check();
  const int n = scores.n();
  NegativeLossResult out;
  out.grad_easy = Eigen::MatrixXd::Zero(n, n);
  out.grad_refined = Eigen::MatrixXd::Zero(n, n);
  if (n < 2) {
    out.batch_too_small = true;
    return out;
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const auto te = negative_term(scores.easy(i, j), alpha, beta);
      const auto tr = negative_term(scores.refined(i, j), alpha, beta);
      out.value += te.value + tr.value;
      out.grad_easy(i, j) = te.dvalue;
      out.grad_refined(i, j) = tr.dvalue;
    }
  }
  return out;
}

double total_loss(double l_ict, double l_neg, double lambda) {
  return l_ict + lambda * l_neg;
}

MarginLossResult margin_loss(double s1, double s2, double s3, double m) {
  if (!(m > 0)) {
    throw Error(ErrorCode::InvalidConfig, "margin_loss: m must be > 0");
  }
  MarginLossResult out;
  const double h1 = -(s2 - s1) + m;
  const double h2 = -(s3 - s2) + m;
  out.min_kink_distance = std::min(std::abs(h1), std::abs(h2));
  if (h1 > 0.0) {
    out.value += h1;
    out.grad[0] += 1.0;
    out.grad[1] -= 1.0;
    out.active[0] = true;
  }
  if (h2 > 0.0) {
    out.value += h2;
    out.grad[1] += 1.0;
    out.grad[2] -= 1.0;
    out.active[1] = true;
  }
  return out;
}

}  // namespace icthp
