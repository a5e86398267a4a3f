#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "superset/data_model.hpp"
#include "superset/model_posterior.hpp"

namespace superset {

/// OLS summary of a training fold: intercept, slopes, inverse Gram, residual variance.
struct FoldFit {
  double ybar0 = 0.0;
  Eigen::VectorXd beta_hat;
  Eigen::MatrixXd gram_inv;
  double s2 = 0.0;  // RSS / (|D0| - k - 1); exactly 0 for an exact fit
  std::size_t n_train = 0;
  bool degenerate = false;
};

/// Normal prior on a local mean: N(yhat, t2).
struct LocalPrior {
  double yhat = 0.0;
  double t2 = 0.0;
};

struct LocalMLResult {
  double sigma2_hat = 0.0;  // 0 encodes the sigma^2 -> 0 boundary limit
  double log_ml = 0.0;
  std::vector<std::pair<double, double>> candidates;  // (sigma^2, log m*)
};

FoldFit fit_fold(const StandardizedFold& fold, const Dataset& ds, const SubsetMask& subset);

/// Prior at a standardized test point; throws DegeneratePrior when s2 = 0.
LocalPrior local_prior(const FoldFit& fit, const Eigen::VectorXd& x_std, std::size_t d0_size);

/// Log marginal likelihood of a group's responses given sigma^2, with the
/// local mean integrated against its prior. Depends on the group only
/// through (n_x, ybar, s2_y).
double log_cond_ml(const LocalGroup& group, const LocalPrior& prior, double sigma2);

/// Value of the local marginal likelihood in the sigma^2 -> 0 limit when all
/// responses in the group coincide: the prior density at ybar.
double log_boundary_ml(const LocalGroup& group, const LocalPrior& prior);

/// Coefficients of the cubic whose positive roots are the stationary points
/// of the local marginal likelihood in sigma^2.
std::array<double, 4> cubic_coefficients(std::size_t n_x, double s2_y, double t2_x, double dev2);

/// Empirical-Bayes maximum over sigma^2 of log_cond_ml.
///
/// Candidates are the positive real roots of the stationarity cubic and, when
/// s2_y = 0, the boundary limit (recorded as sigma^2 = 0) together with the
/// interior point dev^2 - t^2 when it is positive. Candidates whose values
/// agree within 1e-12 resolve to the smaller sigma^2.
LocalMLResult maximize_local_ml(const LocalGroup& group, const LocalPrior& prior);

/// Mean over test observations of the maximized log local marginal
/// likelihoods of the fold's distinct-value groups.
double fold_log_ml_per_obs(const StandardizedFold& fold, const Dataset& ds, const SubsetMask& subset);

/// n * log(mean_f exp(L_f)): per-observation fold values averaged on the
/// likelihood scale and raised to the power n.
double aggregate_fold_log_ml(std::size_t n, std::span<const double> fold_values);

struct H0SubsetScore {
  SubsetMask subset;
  double log_marginal = 0.0;
  std::vector<double> fold_log_ml;  // per-observation values, one per fold
  std::string warning;              // nonempty when a fold fit was exact
};

/// n * log(mean_f exp(L_f)) over the plan's folds; -inf (with a warning) when
/// some training fold is fit exactly.
H0SubsetScore score_h0(const Dataset& ds, const SubsetMask& subset, const FoldPlan& plan);

double h0_log_marginal(const Dataset& ds, const SubsetMask& subset, const FoldPlan& plan);

/// Posterior over `model_space` under the local-constant model with a uniform
/// subset prior. Subsets are scored in parallel; output is thread-count independent.
ModelPosterior h0_posterior(const Dataset& ds, const std::vector<SubsetMask>& model_space,
                            const FoldPlan& plan, std::size_t threads = 0);

}  // namespace superset
