#include "superset/linear_h1.hpp"

#include <algorithm>
#include <cmath>

#include "least_squares.hpp"
#include "superset/errors.hpp"
#include "superset/numerics.hpp"
#include "superset/parallel.hpp"

namespace superset {

double r_squared(const Dataset& ds, const SubsetMask& subset) {
  if (subset.width() != ds.p()) {
    throw InvalidArgument("subset width does not match dataset column count");
  }
  const auto cols = subset.columns();
  const auto k = cols.size();
  if (k == 0) return 0.0;
  if (ds.n() <= k + 1) {
    throw InsufficientObservations("R^2 needs n > k + 1 for subset " + subset.label(ds.names()));
  }
  const auto n = static_cast<Eigen::Index>(ds.n());
  Eigen::MatrixXd z(n, static_cast<Eigen::Index>(k));
  for (std::size_t c = 0; c < k; ++c) {
    const auto col = ds.x().col(static_cast<Eigen::Index>(cols[c]));
    const double mean = col.mean();
    const double sd = std::sqrt((col.array() - mean).square().sum() / static_cast<double>(n - 1));
    if (!(sd > 0.0)) {
      throw DegenerateColumn("column '" + ds.names()[cols[c]] + "' is constant in subset " +
                             subset.label(ds.names()));
    }
    z.col(static_cast<Eigen::Index>(c)) = (col.array() - mean) / sd;
  }
  const auto fit = detail::centered_least_squares(z, ds.y(), subset.label(ds.names()));
  if (!(fit.tss > 0.0)) {
    throw DegenerateColumn("response is constant; R^2 is undefined");
  }
  return std::clamp(1.0 - fit.rss / fit.tss, 0.0, 1.0);
}

H1ModelScore score_h1(const Dataset& ds, const SubsetMask& subset, double hyper_a) {
  H1ModelScore score;
  score.subset = subset;
  score.r2 = r_squared(ds, subset);
  if (score.r2 >= kMaxR2) {
    score.r2 = kMaxR2;
    score.saturated = true;
  }
  score.log_bf = log_g_integral(ds.n(), subset.k(), score.r2, hyper_a);
  return score;
}

ModelPosterior h1_posterior(const Dataset& ds, const std::vector<SubsetMask>& model_space,
                            double hyper_a, std::size_t threads) {
  if (model_space.empty()) throw InvalidArgument("model space is empty");
  std::vector<H1ModelScore> scores(model_space.size());
  detail::parallel_for(model_space.size(), threads,
                       [&](std::size_t i) { scores[i] = score_h1(ds, model_space[i], hyper_a); });

  std::vector<double> log_weights;
  log_weights.reserve(scores.size());
  for (const auto& s : scores) log_weights.push_back(s.log_bf);
  auto post = normalize_posterior(Hypothesis::kLinearH1, model_space, std::move(log_weights));
  for (const auto& s : scores) {
    if (s.saturated) {
      post.warnings.push_back("R^2 clipped to 1 - 1e-12 for subset " + s.subset.label(ds.names()));
    }
  }
  return post;
}

}  // namespace superset
