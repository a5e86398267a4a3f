#pragma once

#include <cstddef>
#include <vector>

#include "superset/data_model.hpp"
#include "superset/model_posterior.hpp"

namespace superset {

/// R^2 values at or above this are clipped before the hyper-g integral.
inline constexpr double kMaxR2 = 1.0 - 1e-12;

/// Gram matrices with condition number at or above this are treated as singular.
inline constexpr double kMaxGramCondition = 1e12;

struct H1ModelScore {
  SubsetMask subset;
  double r2 = 0.0;
  double log_bf = 0.0;  // against the intercept-only model
  bool saturated = false;
};

/// Coefficient of determination of an intercept-included least-squares fit on
/// the fully standardized columns of `subset`; 0 for the empty subset.
/// Throws CollinearSubset when the Gram matrix is numerically singular.
double r_squared(const Dataset& ds, const SubsetMask& subset);

H1ModelScore score_h1(const Dataset& ds, const SubsetMask& subset, double hyper_a);

/// Posterior over `model_space` under the normal linear model with a hyper-g
/// prior and a uniform prior over subsets. Subsets are scored in parallel.
ModelPosterior h1_posterior(const Dataset& ds, const std::vector<SubsetMask>& model_space,
                            double hyper_a, std::size_t threads = 0);

}  // namespace superset
