#include "superset/model_posterior.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "superset/errors.hpp"
#include "superset/numerics.hpp"

namespace superset {

const char* hypothesis_name(Hypothesis h) {
  switch (h) {
    case Hypothesis::kLocalH0:
      return "H0";
    case Hypothesis::kLinearH1:
      return "H1";
  }
  return "?";
}

std::size_t ModelPosterior::argmax() const {
  if (probabilities.empty()) throw InvalidArgument("argmax of an empty posterior");
  return static_cast<std::size_t>(
      std::max_element(probabilities.begin(), probabilities.end()) - probabilities.begin());
}

double ModelPosterior::probability_of(const SubsetMask& subset) const {
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    if (subsets[i] == subset) return probabilities[i];
  }
  return 0.0;
}

ModelPosterior normalize_posterior(Hypothesis hypothesis, std::vector<SubsetMask> subsets,
                                   std::vector<double> log_weights) {
  if (subsets.empty()) throw InvalidArgument("model space is empty");
  if (subsets.size() != log_weights.size()) {
    throw InvalidArgument("model space and log weights differ in length");
  }
  for (double w : log_weights) {
    if (std::isnan(w) || w == std::numeric_limits<double>::infinity()) {
      throw NumericalError(std::string("invalid log marginal likelihood under ") +
                           hypothesis_name(hypothesis));
    }
  }
  const double log_total = log_sum_exp(log_weights);
  if (!std::isfinite(log_total)) {
    throw NumericalError(std::string("every model has zero marginal likelihood under ") +
                         hypothesis_name(hypothesis));
  }
  ModelPosterior post;
  post.hypothesis = hypothesis;
  post.probabilities.resize(log_weights.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < log_weights.size(); ++i) {
    post.probabilities[i] = std::exp(log_weights[i] - log_total);
    sum += post.probabilities[i];
  }
  // Remove the last few ulps of rounding so the mass is 1 to machine precision.
  for (double& p : post.probabilities) p /= sum;
  post.subsets = std::move(subsets);
  post.log_weights = std::move(log_weights);
  return post;
}

}  // namespace superset
