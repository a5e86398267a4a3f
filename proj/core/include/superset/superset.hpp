#pragma once

#include <vector>

#include "superset/data_model.hpp"
#include "superset/model_posterior.hpp"

namespace superset {

enum class SupersetMode {
  kStrict,     // M strictly contains M*
  kInclusive,  // M contains or equals M*
};

/// Whether `m` contains `m_star` (strictly, unless mode is inclusive).
/// Throws InvalidArgument on a width mismatch.
bool is_superset(const SubsetMask& m, const SubsetMask& m_star, SupersetMode mode);

inline bool is_strict_superset(const SubsetMask& m, const SubsetMask& m_star) {
  return is_superset(m, m_star, SupersetMode::kStrict);
}

struct PairContribution {
  SubsetMask h1_subset;  // M
  SubsetMask h0_subset;  // M*
  double contribution = 0.0;
};

struct SupersetReport {
  double probability = 0.0;
  SupersetMode mode = SupersetMode::kStrict;
  /// Every nonzero pair, sorted by descending contribution.
  std::vector<PairContribution> pair_contributions;
};

/// Sum over pairs (M, M*) with M a superset of M* of Pr(M* | H0) Pr(M | H1).
/// Both posteriors must cover the same model space (order may differ).
SupersetReport superset_probability(const ModelPosterior& post_h0, const ModelPosterior& post_h1,
                                    SupersetMode mode = SupersetMode::kStrict);

}  // namespace superset
