#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "superset/errors.hpp"
#include "superset/local_h0.hpp"
#include "superset/numerics.hpp"
#include "superset_cli/commands.hpp"
#include "test_support.hpp"

using namespace superset;

namespace {

const double kHalfLog2Pi = 0.5 * std::log(2.0 * std::numbers::pi);

LocalGroup make_group(const std::vector<double>& ys) {
  LocalGroup g;
  fill_group_moments(g, ys);
  return g;
}

double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  return std::exp(u(rng));
}

// Responses with a chosen size, mean and spread (1/n convention).
std::vector<double> ys_with(std::size_t n, double mean, double s2) {
  std::vector<double> ys(n, mean);
  if (n >= 2 && s2 > 0.0) {
    const double h = std::sqrt(s2 * static_cast<double>(n) / 2.0);
    ys[0] += h;
    ys[1] -= h;
  }
  return ys;
}

Eigen::MatrixXd columns_of(const Dataset& ds, const std::vector<std::size_t>& rows, const SubsetMask& s) {
  const auto cols = s.columns();
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < cols.size(); ++c) {
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          ds.x()(static_cast<Eigen::Index>(rows[r]), static_cast<Eigen::Index>(cols[c]));
    }
  }
  return out;
}

Eigen::VectorXd responses_of(const Dataset& ds, const std::vector<std::size_t>& rows) {
  Eigen::VectorXd y(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) y(static_cast<Eigen::Index>(r)) = ds.y()(static_cast<Eigen::Index>(rows[r]));
  return y;
}

}  // namespace

TEST_CASE("fit_fold with no covariates") {
  Eigen::VectorXd y(4);
  y << 1, 2, 3, 10;
  Eigen::MatrixXd x(4, 1);
  x << 0, 1, 2, 3;
  const Dataset ds(y, x, {"a"});
  const FoldPlan plan{2, 0, {1, 1, 1, 2}};
  const SubsetMask empty(0, 1);
  const auto fit = fit_fold(standardize_fold(ds, empty, plan, 2), ds, empty);
  CHECK(fit.ybar0 == doctest::Approx(2.0));
  CHECK(fit.s2 == doctest::Approx(1.0));
  CHECK(fit.beta_hat.size() == 0);
  CHECK(!fit.degenerate);
}

TEST_CASE("fit_fold flags an exact training fit") {
  Eigen::VectorXd y(5);
  y << -1, 0, 1, 7, 5;
  Eigen::MatrixXd x(5, 1);
  x << -1, 0, 1, 2, 3;
  const Dataset ds(y, x, {"a"});
  const FoldPlan plan{2, 0, {1, 1, 1, 2, 2}};
  const SubsetMask a(1, 1);
  const auto fit = fit_fold(standardize_fold(ds, a, plan, 2), ds, a);
  CHECK(fit.degenerate);
  CHECK(fit.s2 == 0.0);
  CHECK(fit.beta_hat(0) == doctest::Approx(1.0));  // standardized x equals y here
  CHECK_THROWS_AS(local_prior(fit, Eigen::VectorXd::Zero(1), 3), DegeneratePrior);
}

TEST_CASE("fit_fold needs more training rows than parameters") {
  Eigen::VectorXd y(4);
  y << 1, 2, 4, 3;
  Eigen::MatrixXd x(4, 2);
  x << 1, 0, 2, 1, 3, 5, 4, 4;
  const Dataset ds(y, x, {"a", "b"});
  const FoldPlan plan{2, 0, {1, 1, 1, 2}};
  const SubsetMask both(3, 2);
  CHECK_THROWS_AS(fit_fold(standardize_fold(ds, both, plan, 2), ds, both), InsufficientObservations);
}

TEST_CASE("fit_fold on a diabetes fold matches the normal equations") {
  const auto& ds = test_support::diabetes();
  const auto plan = make_folds(ds.n(), 10, 17);
  const SubsetMask full((1u << ds.p()) - 1, ds.p());
  const auto fold = standardize_fold(ds, full, plan, 4);
  const auto fit = fit_fold(fold, ds, full);
  const auto ref = oracle::ols_normal_equations(fold.z_train, responses_of(ds, fold.train_ids));
  CHECK(fit.ybar0 == doctest::Approx(ref.intercept).epsilon(1e-10));
  for (Eigen::Index j = 0; j < ref.slopes.size(); ++j) {
    CHECK(std::abs(fit.beta_hat(j) - ref.slopes(j)) <= 1e-8 * std::max(1.0, std::abs(ref.slopes(j))));
  }
  CHECK(fit.s2 == doctest::Approx(ref.s2).epsilon(1e-10));
  // Training columns are centered, so the slope block of the full inverse is the Gram inverse.
  const Eigen::MatrixXd block = ref.xtx_inv.bottomRightCorner(10, 10);
  CHECK((fit.gram_inv - block).cwiseAbs().maxCoeff() <= 1e-8 * block.cwiseAbs().maxCoeff());
}

TEST_CASE("local_prior examples") {
  FoldFit fit;
  fit.ybar0 = 2.0;
  fit.s2 = 1.0;
  fit.n_train = 4;
  const auto p = local_prior(fit, Eigen::VectorXd(0), 4);
  CHECK(p.yhat == 2.0);
  CHECK(p.t2 == doctest::Approx(0.25));

  fit.beta_hat = Eigen::Vector2d(1.0, -2.0);
  fit.gram_inv = Eigen::Matrix2d::Identity() * 0.1;
  const auto at_mean = local_prior(fit, Eigen::Vector2d::Zero(), 4);
  CHECK(at_mean.yhat == 2.0);
  CHECK(at_mean.t2 == doctest::Approx(0.25));
  CHECK_THROWS_AS(local_prior(fit, Eigen::Vector3d::Zero(), 4), InvalidArgument);
}

TEST_CASE("local_prior variance equals the OLS predictive-mean variance") {
  const auto& ds = test_support::diabetes();
  const auto plan = make_folds(ds.n(), 5, 23);
  const SubsetMask s(0b0000111101, ds.p());
  const auto fold = standardize_fold(ds, s, plan, 2);
  const auto fit = fit_fold(fold, ds, s);
  const auto ref = oracle::ols_normal_equations(fold.z_train, responses_of(ds, fold.train_ids));
  for (Eigen::Index r = 0; r < fold.z_test.rows(); r += 7) {
    const Eigen::VectorXd x = fold.z_test.row(r).transpose();
    Eigen::VectorXd design(x.size() + 1);
    design << 1.0, x;
    const double var = ref.s2 * design.dot(ref.xtx_inv * design);
    const double mean = ref.intercept + x.dot(ref.slopes);
    const auto p = local_prior(fit, x, fit.n_train);
    CHECK(p.t2 == doctest::Approx(var).epsilon(1e-9));
    CHECK(p.yhat == doctest::Approx(mean).epsilon(1e-10));
  }
}

TEST_CASE("log_cond_ml examples") {
  CHECK(log_cond_ml(make_group({0.0}), {0.0, 1.0}, 1.0) ==
        doctest::Approx(-0.5 * std::log(2.0 * std::numbers::pi * 2.0)).epsilon(1e-14));
  CHECK(log_cond_ml(make_group({0.7}), {0.7, 1.0}, 1e-12) == doctest::Approx(-kHalfLog2Pi).epsilon(1e-10));
  CHECK_THROWS_AS(log_cond_ml(make_group({0.0}), {0.0, 1.0}, 0.0), DomainError);
  CHECK_THROWS_AS(log_cond_ml(make_group({0.0}), {0.0, 1.0}, -1.0), DomainError);
}

TEST_CASE("log_cond_ml matches the raw closed form and direct integration") {
  const std::vector<double> same{0.4, 0.4};
  for (double sigma2 : {0.01, 0.3, 1.0, 9.0}) {
    CHECK(log_cond_ml(make_group(same), {0.1, 0.5}, sigma2) ==
          doctest::Approx(oracle::log_cond_ml_quadrature(same, 0.1, 0.5, sigma2)).epsilon(1e-10));
  }
  std::mt19937_64 rng(31);
  std::normal_distribution<double> z(0.0, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng() % 8;
    std::vector<double> ys(n);
    for (double& y : ys) y = z(rng);
    const double yhat = z(rng);
    const double t2 = log_uniform(rng, 0.05, 5.0);
    const double sigma2 = log_uniform(rng, 0.05, 5.0);
    const double lib = log_cond_ml(make_group(ys), {yhat, t2}, sigma2);
    const double literal = oracle::log_cond_ml_literal(ys, yhat, t2, sigma2);
    CHECK(std::abs(lib - literal) <= 1e-10 * std::max(1.0, std::abs(literal)));
    if (trial % 30 == 0) {
      CHECK(std::abs(lib - oracle::log_cond_ml_quadrature(ys, yhat, t2, sigma2)) <= 1e-9);
    }
  }
}

TEST_CASE("log_cond_ml stays finite at extreme magnitudes") {
  const auto ys = ys_with(400, 50.0, 2.0);
  const double v = log_cond_ml(make_group(ys), {-50.0, 1e-3}, 1e-4);
  CHECK(std::isfinite(v));
  CHECK(v < -1e4);
}

TEST_CASE("cubic_coefficients examples") {
  const auto a = cubic_coefficients(1, 0.0, 1.0, 4.0);
  CHECK(a == std::array<double, 4>{-1.0, 3.0, 0.0, 0.0});
  const auto b = cubic_coefficients(2, 1.0, 1.0, 0.0);
  CHECK(b == std::array<double, 4>{-1.0, -2.0, 2.0, 4.0});
  CHECK(cubic_coefficients(5, 0.3, 2.0, 1.0)[3] == doctest::Approx(25.0 * 0.3));
}

TEST_CASE("cubic roots are the stationary points of log_cond_ml") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng() % 20;
    const double s2 = log_uniform(rng, 1e-3, 10.0);
    const double t2 = log_uniform(rng, 1e-3, 10.0);
    const double dev = log_uniform(rng, 1e-3, 10.0);
    const auto g = make_group(ys_with(n, dev, s2));
    const LocalPrior prior{0.0, t2};
    const auto a = cubic_coefficients(n, g.s2_y, t2, dev * dev);
    for (double r : solve_cubic(a[0], a[1], a[2], a[3]).roots) {
      if (r <= 0.0) continue;
      const double h = 1e-5 * r;
      const double slope = (log_cond_ml(g, prior, r + h) - log_cond_ml(g, prior, r - h)) / (2.0 * h);
      const double scale = std::abs(log_cond_ml(g, prior, r)) / r + 1.0 / r;
      CHECK(std::abs(slope) <= 1e-5 * scale);
    }
  }
}

TEST_CASE("maximize_local_ml examples") {
  const auto at_center = maximize_local_ml(make_group({1.5}), {1.5, 1.0});
  CHECK(at_center.sigma2_hat == 0.0);
  CHECK(at_center.log_ml == doctest::Approx(-kHalfLog2Pi).epsilon(1e-14));

  const auto interior = maximize_local_ml(make_group({2.0}), {0.0, 1.0});
  CHECK(interior.sigma2_hat == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(interior.log_ml == doctest::Approx(std::log(0.1209853622595717)).epsilon(1e-12));
  const auto grid = oracle::grid_maximize(
      [](double ls) { return oracle::log_cond_ml_literal(std::vector<double>{2.0}, 0.0, 1.0, std::exp(ls)); },
      -30.0, 30.0, 6001);
  CHECK(std::exp(grid.log_sigma2) == doctest::Approx(3.0).epsilon(1e-6));

  const std::vector<double> pair{-1.0, 1.0};
  const auto spread = maximize_local_ml(make_group(pair), {0.0, 1.0});
  const auto g2 = oracle::grid_maximize(
      [&](double ls) { return oracle::log_cond_ml_literal(pair, 0.0, 1.0, std::exp(ls)); }, -30.0, 30.0, 6001);
  CHECK(spread.sigma2_hat > 0.0);
  CHECK(std::abs(spread.sigma2_hat - std::exp(g2.log_sigma2)) <= 1e-6 * spread.sigma2_hat);
  const auto a = cubic_coefficients(2, 1.0, 1.0, 0.0);
  CHECK(std::abs(((a[0] * spread.sigma2_hat + a[1]) * spread.sigma2_hat + a[2]) * spread.sigma2_hat + a[3]) <= 1e-10);
}

TEST_CASE("maximize_local_ml result dominates its candidates") {
  const auto r = maximize_local_ml(make_group({0.2, 0.9, 1.4}), {0.0, 0.3});
  for (const auto& [s2, v] : r.candidates) CHECK(r.log_ml >= v);
  CHECK(std::isfinite(r.log_ml));
}

TEST_CASE("maximize_local_ml dominates a dense grid") {
  std::mt19937_64 rng(2718);
  std::normal_distribution<double> z(0.0, 1.0);
  std::size_t checked = 0;
  while (checked < 1000) {
    const std::size_t n = 1 + rng() % 30;
    const double s2 = (rng() % 4 == 0) ? 0.0 : log_uniform(rng, 1e-4, 1e2);
    // Equal responses in a group of two or more have no finite supremum.
    if (n >= 2 && s2 == 0.0) continue;
    const double t2 = log_uniform(rng, 1e-4, 1e2);
    const double yhat = 3.0 * z(rng);
    const auto ys = ys_with(n, yhat + 3.0 * z(rng), s2);
    const auto g = make_group(ys);
    const LocalPrior prior{yhat, t2};
    const auto best = maximize_local_ml(g, prior);
    const auto grid = oracle::grid_maximize(
        [&](double ls) { return log_cond_ml(g, prior, std::exp(ls)); }, -30.0, 30.0, 1000);
    CHECK(best.log_ml >= grid.grid_value - 1e-9);
    CHECK(best.log_ml >= grid.value - 1e-9);
    ++checked;
  }
}

TEST_CASE("local marginal likelihood limits as sigma^2 -> 0 and infinity") {
  // One observation: the sigma^2 -> 0 limit is the prior density at the observation.
  for (double dev : {0.0, 0.5, 3.0}) {
    for (double t2 : {0.1, 1.0, 7.0}) {
      const auto g = make_group({dev});
      const LocalPrior prior{0.0, t2};
      CHECK(std::abs(log_cond_ml(g, prior, 1e-12) - log_boundary_ml(g, prior)) <= 1e-6);
    }
  }
  // Positive spread: the likelihood vanishes at both ends.
  const auto g = make_group({-0.3, 0.4, 1.1});
  const LocalPrior prior{0.2, 0.5};
  const double top = maximize_local_ml(g, prior).log_ml;
  CHECK(log_cond_ml(g, prior, 1e-12) < top - 1e10);
  CHECK(log_cond_ml(g, prior, 1e-6) > log_cond_ml(g, prior, 1e-12));
  CHECK(log_cond_ml(g, prior, 1e12) < top - 20.0);
  CHECK(log_cond_ml(g, prior, 1e12) > log_cond_ml(g, prior, 1e14));
}

TEST_CASE("equal responses in a larger group diverge as sigma^2 shrinks") {
  // Documented limitation: the boundary candidate is finite but the
  // likelihood itself grows without bound here.
  const auto g = make_group({0.5, 0.5, 0.5});
  const LocalPrior prior{0.0, 1.0};
  CHECK(log_cond_ml(g, prior, 1e-8) > log_cond_ml(g, prior, 1e-4));
  const auto r = maximize_local_ml(g, prior);
  CHECK(std::isfinite(r.log_ml));
  CHECK(r.sigma2_hat == 0.0);
  CHECK(r.log_ml == doctest::Approx(log_boundary_ml(g, prior)));
}

TEST_CASE("a boundary tie resolves to the smaller sigma^2") {
  // dev^2 = t^2 makes the interior candidate coincide with the boundary.
  const auto r = maximize_local_ml(make_group({1.0}), {0.0, 1.0});
  CHECK(r.sigma2_hat == 0.0);
}

TEST_CASE("fold_log_ml_per_obs with a single test group") {
  Eigen::VectorXd y(8);
  y << 1.0, 2.2, 2.9, 4.1, 5.2, 2.4, 2.6, 3.1;
  Eigen::MatrixXd x(8, 1);
  x << 1, 2, 3, 4, 5, 2.5, 2.5, 2.5;
  const Dataset ds(y, x, {"a"});
  const FoldPlan plan{2, 0, {1, 1, 1, 1, 1, 2, 2, 2}};
  const SubsetMask a(1, 1);
  const auto fold = standardize_fold(ds, a, plan, 2);
  const auto fit = fit_fold(fold, ds, a);
  const auto groups = group_distinct(fold, ds, a);
  REQUIRE(groups.size() == 1);
  const auto best = maximize_local_ml(groups[0], local_prior(fit, groups[0].x_std, fit.n_train));
  CHECK(fold_log_ml_per_obs(fold, ds, a) == doctest::Approx(best.log_ml / 3.0).epsilon(1e-14));
}

TEST_CASE("fold_log_ml_per_obs on a diabetes fold matches an independent composition") {
  const auto& ds = test_support::diabetes();
  const auto plan = make_folds(ds.n(), 10, 8);
  const SubsetMask bmi(1u << ds.column_index("BMI"), ds.p());
  const auto fold = standardize_fold(ds, bmi, plan, 6);
  const double lib = fold_log_ml_per_obs(fold, ds, bmi);

  // Independent route: normal equations on raw BMI, predictive variance,
  // exact grouping by value, grid maximization of the factored closed form.
  const Eigen::MatrixXd x0 = columns_of(ds, fold.train_ids, bmi);
  const auto ref = oracle::ols_normal_equations(x0, responses_of(ds, fold.train_ids));
  std::map<double, std::vector<double>> groups;
  for (auto i : fold.test_ids) {
    groups[ds.x()(static_cast<Eigen::Index>(i), 2)].push_back(ds.y()(static_cast<Eigen::Index>(i)));
  }
  double total = 0.0;
  for (const auto& [xv, ys] : groups) {
    const Eigen::Vector2d design(1.0, xv);
    const double yhat = ref.intercept + ref.slopes(0) * xv;
    const double t2 = ref.s2 * design.dot(ref.xtx_inv * design);
    double best = -std::numeric_limits<double>::infinity();
    bool all_equal = std::all_of(ys.begin(), ys.end(), [&](double v) { return v == ys[0]; });
    if (all_equal) {
      const double ybar = ys[0];
      best = -0.5 * std::log(2.0 * std::numbers::pi * t2) - 0.5 * (ybar - yhat) * (ybar - yhat) / t2;
    }
    const auto gm = oracle::grid_maximize(
        [&](double ls) { return oracle::log_cond_ml_factored(ys, yhat, t2, std::exp(ls)); }, -30.0, 30.0, 4001);
    best = std::max(best, gm.value);
    total += best;
  }
  const double expected = total / static_cast<double>(fold.test_ids.size());
  CHECK(lib < 0.0);
  CHECK(std::abs(lib - expected) <= 1e-8 * std::max(1.0, std::abs(expected)));
}

TEST_CASE("aggregate_fold_log_ml examples") {
  const std::vector<double> equal{-1.3, -1.3, -1.3};
  CHECK(aggregate_fold_log_ml(50, equal) == doctest::Approx(50 * -1.3).epsilon(1e-14));
  const std::vector<double> two{std::log(2.0), std::log(4.0)};
  CHECK(aggregate_fold_log_ml(10, two) == doctest::Approx(10.0 * std::log(3.0)).epsilon(1e-14));
  CHECK_THROWS_AS(aggregate_fold_log_ml(10, std::vector<double>{}), InvalidArgument);
}

TEST_CASE("h0_log_marginal is deterministic") {
  const auto& ds = test_support::diabetes();
  const auto plan = make_folds(ds.n(), 10, 3);
  const SubsetMask full((1u << ds.p()) - 1, ds.p());
  const double a = h0_log_marginal(ds, full, plan);
  const double b = h0_log_marginal(ds, full, make_folds(ds.n(), 10, 3));
  CHECK(std::isfinite(a));
  CHECK(a == b);
}

TEST_CASE("h0_log_marginal is invariant to fold relabeling and row order within folds") {
  const auto& ds = test_support::diabetes();
  const auto plan = make_folds(ds.n(), 6, 12);
  const SubsetMask s(0b0001000110, ds.p());
  const double base = h0_log_marginal(ds, s, plan);

  FoldPlan relabeled = plan;
  for (auto& f : relabeled.assignment) f = (f + 3) % plan.m + 1;
  CHECK(h0_log_marginal(ds, s, relabeled) == doctest::Approx(base).epsilon(1e-12));

  // Reverse the rows: every fold keeps its members but sees them in another order.
  std::vector<std::size_t> order(ds.n());
  for (std::size_t i = 0; i < ds.n(); ++i) order[i] = ds.n() - 1 - i;
  const Dataset reversed = ds.select_rows(order);
  FoldPlan moved = plan;
  for (std::size_t i = 0; i < ds.n(); ++i) moved.assignment[i] = plan.assignment[order[i]];
  CHECK(h0_log_marginal(reversed, s, moved) == doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("h0_posterior examples") {
  const auto& ds = test_support::diabetes();
  const auto plan = make_folds(ds.n(), 10, 0);
  const auto single = h0_posterior(ds, {SubsetMask(0b100, ds.p())}, plan, 1);
  CHECK(single.probabilities == std::vector<double>{1.0});

  // The same subset twice has equal marginals.
  const auto twice = h0_posterior(ds, {SubsetMask(0b100, ds.p()), SubsetMask(0b100, ds.p())}, plan, 1);
  CHECK(twice.probabilities[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(twice.probabilities[1] == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("h0_posterior is independent of the thread count") {
  const auto& ds = test_support::diabetes();
  const auto plan = make_folds(ds.n(), 10, 2);
  std::vector<SubsetMask> space;
  for (std::uint64_t b = 0; b < 64; ++b) space.emplace_back(b, ds.p());
  const auto one = h0_posterior(ds, space, plan, 1);
  const auto three = h0_posterior(ds, space, plan, 3);
  CHECK(one.log_weights == three.log_weights);
}

TEST_CASE("h0_posterior on replicated-design synthetic data") {
  cli::SynthConfig cfg;
  cfg.seed = 5;
  cfg.distractors = 0;
  auto mode_of = [](const cli::SynthConfig& c) {
    const auto data = cli::ingest_text(cli::synth_csv(c), {"Y", cli::LogBase::kNone});
    const auto& ds = data.dataset;
    const auto post = h0_posterior(ds, enumerate_subsets(ds.p(), true), make_folds(ds.n(), 10, 1), 1);
    return post.subsets[post.argmax()].label(ds.names());
  };
  // Linear truth: the true covariate alone; x_U = x_T^2 adds no new groups.
  cfg.beta2 = 0.0;
  CHECK(mode_of(cfg) == "{x_T}");
  // Quadratic truth: {x_T} and {x_T,x_U} group identically, but only the
  // latter gives a local prior mean that follows the curvature.
  cfg.beta2 = 1.0;
  CHECK(mode_of(cfg) == "{x_T,x_U}");
}

TEST_CASE("independent distractors raise the H0 marginal by splitting groups") {
  cli::SynthConfig cfg;
  cfg.seed = 5;
  const auto data = cli::ingest_text(cli::synth_csv(cfg), {"Y", cli::LogBase::kNone});
  const auto& ds = data.dataset;
  const auto plan = make_folds(ds.n(), 10, 1);
  const double base = h0_log_marginal(ds, SubsetMask(0b0011, 4), plan);
  const double split = h0_log_marginal(ds, SubsetMask(0b1111, 4), plan);
  CHECK(split > base);
}

TEST_CASE("score_h0 scores an exact training fit as impossible") {
  Eigen::VectorXd y(8);
  Eigen::MatrixXd x(8, 1);
  for (Eigen::Index i = 0; i < 8; ++i) {
    x(i, 0) = static_cast<double>(i);
    y(i) = 2.0 * static_cast<double>(i) - 1.0;
  }
  const Dataset ds(y, x, {"a"});
  const auto score = score_h0(ds, SubsetMask(1, 1), make_folds(8, 2, 0));
  CHECK(score.log_marginal == -std::numeric_limits<double>::infinity());
  CHECK(!score.warning.empty());
}

TEST_CASE("factored and literal oracles agree away from sigma^2 -> 0") {
  std::mt19937_64 rng(77);
  std::normal_distribution<double> z(0.0, 1.0);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> ys(1 + rng() % 8);
    for (double& y : ys) y = z(rng);
    const double t2 = std::exp(z(rng));
    const double sigma2 = std::exp(2.0 * z(rng));
    const double yhat = z(rng);
    CHECK(oracle::log_cond_ml_factored(ys, yhat, t2, sigma2) ==
          doctest::Approx(oracle::log_cond_ml_literal(ys, yhat, t2, sigma2)).epsilon(1e-10));
  }
}
