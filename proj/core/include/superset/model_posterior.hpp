#pragma once

#include <string>
#include <vector>

#include "superset/data_model.hpp"

namespace superset {

enum class Hypothesis { kLocalH0, kLinearH1 };

const char* hypothesis_name(Hypothesis h);

/// Posterior over an enumerated model space under a uniform subset prior.
///
/// `subsets`, `log_weights` and `probabilities` are index-aligned.
/// `log_weights` are unnormalized log marginal likelihoods and may be -inf.
struct ModelPosterior {
  Hypothesis hypothesis = Hypothesis::kLinearH1;
  std::vector<SubsetMask> subsets;
  std::vector<double> log_weights;
  std::vector<double> probabilities;
  std::vector<std::string> warnings;

  std::size_t size() const noexcept { return subsets.size(); }
  std::size_t argmax() const;
  double probability_of(const SubsetMask& subset) const;
};

/// Normalizes log weights through log-sum-exp. Throws NumericalError when
/// every weight is -inf or any weight is NaN / +inf.
ModelPosterior normalize_posterior(Hypothesis hypothesis, std::vector<SubsetMask> subsets,
                                   std::vector<double> log_weights);

}  // namespace superset
