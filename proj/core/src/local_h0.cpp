#include "superset/local_h0.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "least_squares.hpp"
#include "superset/errors.hpp"
#include "superset/numerics.hpp"
#include "superset/parallel.hpp"

namespace superset {

namespace {

constexpr double kLog2Pi = 1.8378770664093454836;  // log(2 pi)

// Relative RSS below which a training fit counts as exact.
constexpr double kExactFitRss = 1e-20;

constexpr double kTieTolerance = 1e-12;

double per_obs_value(const StandardizedFold& fold, const Dataset& ds, const SubsetMask& subset,
                     const FoldFit& fit) {
  const auto groups = group_distinct(fold, ds, subset);
  double total = 0.0;
  for (const auto& g : groups) {
    const auto prior = local_prior(fit, g.x_std, fit.n_train);
    total += maximize_local_ml(g, prior).log_ml;
  }
  return total / static_cast<double>(fold.test_ids.size());
}

}  // namespace

FoldFit fit_fold(const StandardizedFold& fold, const Dataset& ds, const SubsetMask& subset) {
  const auto k = static_cast<std::size_t>(fold.z_train.cols());
  const auto n0 = fold.train_ids.size();
  if (n0 <= k + 1) {
    throw InsufficientObservations("fold " + std::to_string(fold.fold_id) + " has " +
                                   std::to_string(n0) + " training rows; subset " +
                                   subset.label(ds.names()) + " needs more than " +
                                   std::to_string(k + 1));
  }
  Eigen::VectorXd y(static_cast<Eigen::Index>(n0));
  for (std::size_t r = 0; r < n0; ++r) {
    y(static_cast<Eigen::Index>(r)) = ds.y()(static_cast<Eigen::Index>(fold.train_ids[r]));
  }
  const auto ls = detail::centered_least_squares(
      fold.z_train, y, subset.label(ds.names()) + " in fold " + std::to_string(fold.fold_id));

  FoldFit fit;
  fit.ybar0 = ls.ybar;
  fit.beta_hat = ls.beta;
  fit.gram_inv = ls.gram_inv;
  fit.n_train = n0;
  if (ls.rss <= kExactFitRss * ls.tss || ls.tss == 0.0) {
    fit.s2 = 0.0;
    fit.degenerate = true;
  } else {
    fit.s2 = ls.rss / static_cast<double>(n0 - k - 1);
  }
  return fit;
}

LocalPrior local_prior(const FoldFit& fit, const Eigen::VectorXd& x_std, std::size_t d0_size) {
  if (!(fit.s2 > 0.0)) {
    throw DegeneratePrior("training residual variance is zero; local prior variance collapses");
  }
  if (x_std.size() != fit.beta_hat.size()) {
    throw InvalidArgument("test point dimension does not match the fold fit");
  }
  LocalPrior prior;
  double quad = 0.0;
  if (x_std.size() > 0) {
    prior.yhat = fit.ybar0 + x_std.dot(fit.beta_hat);
    quad = x_std.dot(fit.gram_inv * x_std);
  } else {
    prior.yhat = fit.ybar0;
  }
  prior.t2 = fit.s2 * (1.0 / static_cast<double>(d0_size) + quad);
  return prior;
}

double log_cond_ml(const LocalGroup& group, const LocalPrior& prior, double sigma2) {
  if (!(sigma2 > 0.0)) {
    throw DomainError("sigma^2 must be positive, got " + std::to_string(sigma2));
  }
  if (!(prior.t2 > 0.0)) {
    throw DomainError("prior variance must be positive");
  }
  // Centered form of log[ tau / ((sqrt(2 pi) sigma)^n t) * exp(-(-mu^2/tau^2 + sum y^2/sigma^2
  // + yhat^2/t^2)/2) ]; identical algebraically, free of the large cancelling terms.
  const double n = static_cast<double>(group.n_x);
  const double dev = group.ybar - prior.yhat;
  const double spread = sigma2 + n * prior.t2;
  return -0.5 * n * kLog2Pi - 0.5 * (n - 1.0) * std::log(sigma2) - 0.5 * std::log(spread) -
         0.5 * n * group.s2_y / sigma2 - 0.5 * n * dev * dev / spread;
}

double log_boundary_ml(const LocalGroup& group, const LocalPrior& prior) {
  const double dev = group.ybar - prior.yhat;
  return -0.5 * kLog2Pi - 0.5 * std::log(prior.t2) - 0.5 * dev * dev / prior.t2;
}

std::array<double, 4> cubic_coefficients(std::size_t n_x, double s2_y, double t2_x, double dev2) {
  const double n = static_cast<double>(n_x);
  const double t4 = t2_x * t2_x;
  return {
      -1.0 / t4,
      (1.0 - 2.0 * n) / t2_x + (s2_y + dev2) / t4,
      -n * n + n + 2.0 * n * s2_y / t2_x,
      n * n * s2_y,
  };
}

LocalMLResult maximize_local_ml(const LocalGroup& group, const LocalPrior& prior) {
  if (!(prior.t2 > 0.0)) {
    throw DomainError("prior variance must be positive");
  }
  if (group.n_x == 0) {
    throw InvalidArgument("local group is empty");
  }
  const double dev = group.ybar - prior.yhat;
  const double dev2 = dev * dev;
  const auto a = cubic_coefficients(group.n_x, group.s2_y, prior.t2, dev2);

  LocalMLResult result;
  auto add_interior = [&](double sigma2) {
    if (sigma2 > 0.0 && std::isfinite(sigma2)) {
      result.candidates.emplace_back(sigma2, log_cond_ml(group, prior, sigma2));
    }
  };

  if (group.s2_y > 0.0) {
    for (double r : solve_cubic(a[0], a[1], a[2], a[3]).roots) add_interior(r);
  } else {
    // a4 = 0: factor out the root at zero and solve what remains.
    if (a[1] != 0.0 || a[2] != 0.0) {
      for (double r : solve_cubic(0.0, a[0], a[1], a[2]).roots) add_interior(r);
    }
    result.candidates.emplace_back(0.0, log_boundary_ml(group, prior));
    if (dev2 > prior.t2) add_interior(dev2 - prior.t2);
  }

  if (result.candidates.empty()) {
    throw NumericalError("no stationary point found for the local marginal likelihood (n_x=" +
                         std::to_string(group.n_x) + ", s2_y=" + std::to_string(group.s2_y) + ")");
  }
  result.sigma2_hat = result.candidates.front().first;
  result.log_ml = result.candidates.front().second;
  for (const auto& [sigma2, value] : result.candidates) {
    if (value > result.log_ml + kTieTolerance) {
      result.sigma2_hat = sigma2;
      result.log_ml = value;
    } else if (std::abs(value - result.log_ml) <= kTieTolerance && sigma2 < result.sigma2_hat) {
      result.sigma2_hat = sigma2;
      result.log_ml = std::max(value, result.log_ml);
    }
  }
  if (!std::isfinite(result.log_ml)) {
    throw NumericalError("maximized local marginal likelihood is not finite");
  }
  return result;
}

double fold_log_ml_per_obs(const StandardizedFold& fold, const Dataset& ds, const SubsetMask& subset) {
  const auto fit = fit_fold(fold, ds, subset);
  return per_obs_value(fold, ds, subset, fit);
}

double aggregate_fold_log_ml(std::size_t n, std::span<const double> fold_values) {
  if (fold_values.empty()) throw InvalidArgument("no fold values to aggregate");
  return static_cast<double>(n) *
         (log_sum_exp(fold_values) - std::log(static_cast<double>(fold_values.size())));
}

H0SubsetScore score_h0(const Dataset& ds, const SubsetMask& subset, const FoldPlan& plan) {
  H0SubsetScore score;
  score.subset = subset;
  score.fold_log_ml.reserve(plan.m);
  for (std::size_t f = 1; f <= plan.m; ++f) {
    const auto fold = standardize_fold(ds, subset, plan, f);
    const auto fit = fit_fold(fold, ds, subset);
    if (fit.degenerate) {
      score.log_marginal = -std::numeric_limits<double>::infinity();
      score.warning = "exact training fit in fold " + std::to_string(f) + " for subset " +
                      subset.label(ds.names()) + "; scored as zero marginal likelihood";
      return score;
    }
    score.fold_log_ml.push_back(per_obs_value(fold, ds, subset, fit));
  }
  score.log_marginal = aggregate_fold_log_ml(ds.n(), score.fold_log_ml);
  return score;
}

double h0_log_marginal(const Dataset& ds, const SubsetMask& subset, const FoldPlan& plan) {
  return score_h0(ds, subset, plan).log_marginal;
}

ModelPosterior h0_posterior(const Dataset& ds, const std::vector<SubsetMask>& model_space,
                            const FoldPlan& plan, std::size_t threads) {
  if (model_space.empty()) throw InvalidArgument("model space is empty");
  std::vector<H0SubsetScore> scores(model_space.size());
  detail::parallel_for(model_space.size(), threads,
                       [&](std::size_t i) { scores[i] = score_h0(ds, model_space[i], plan); });

  std::vector<double> log_weights;
  log_weights.reserve(scores.size());
  for (const auto& s : scores) log_weights.push_back(s.log_marginal);
  auto post = normalize_posterior(Hypothesis::kLocalH0, model_space, std::move(log_weights));
  for (const auto& s : scores) {
    if (!s.warning.empty()) post.warnings.push_back(s.warning);
  }
  return post;
}

}  // namespace superset
