#pragma once

#include <Eigen/Dense>

#include <string>

namespace superset::detail {

/// Intercept-plus-slopes least squares for covariates that are already
/// centered on the fitted rows (so the intercept is the response mean).
struct CenteredFit {
  double ybar = 0.0;
  Eigen::VectorXd beta;
  Eigen::MatrixXd gram_inv;  // (Z^T Z)^{-1}
  Eigen::VectorXd residuals;
  double rss = 0.0;
  double tss = 0.0;
};

/// Throws CollinearSubset (mentioning `context`) when cond(Z^T Z) >= kMaxGramCondition.
CenteredFit centered_least_squares(const Eigen::MatrixXd& z, const Eigen::VectorXd& y,
                                   const std::string& context);

}  // namespace superset::detail
