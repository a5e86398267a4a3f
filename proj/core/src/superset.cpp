#include "superset/superset.hpp"

#include <algorithm>
#include <tuple>

#include "superset/errors.hpp"

namespace superset {

bool is_superset(const SubsetMask& m, const SubsetMask& m_star, SupersetMode mode) {
  if (m.width() != m_star.width()) {
    throw InvalidArgument("subset widths differ: " + std::to_string(m.width()) + " vs " +
                          std::to_string(m_star.width()));
  }
  const bool contains = (m_star.bits() & ~m.bits()) == 0;
  if (!contains) return false;
  return mode == SupersetMode::kInclusive || m.bits() != m_star.bits();
}

SupersetReport superset_probability(const ModelPosterior& post_h0, const ModelPosterior& post_h1,
                                    SupersetMode mode) {
  auto sorted_space = [](const ModelPosterior& p) {
    auto s = p.subsets;
    std::sort(s.begin(), s.end());
    return s;
  };
  if (post_h0.size() != post_h1.size() || sorted_space(post_h0) != sorted_space(post_h1)) {
    throw InvalidArgument("H0 and H1 posteriors are defined on different model spaces");
  }

  SupersetReport report;
  report.mode = mode;
  for (std::size_t i = 0; i < post_h1.size(); ++i) {
    const double p1 = post_h1.probabilities[i];
    if (p1 == 0.0) continue;
    for (std::size_t j = 0; j < post_h0.size(); ++j) {
      const double p0 = post_h0.probabilities[j];
      if (p0 == 0.0 || !is_superset(post_h1.subsets[i], post_h0.subsets[j], mode)) continue;
      const double c = p0 * p1;
      if (c > 0.0) report.pair_contributions.push_back({post_h1.subsets[i], post_h0.subsets[j], c});
    }
  }
  std::sort(report.pair_contributions.begin(), report.pair_contributions.end(),
            [](const PairContribution& a, const PairContribution& b) {
              return std::tie(b.contribution, a.h1_subset, a.h0_subset) <
                     std::tie(a.contribution, b.h1_subset, b.h0_subset);
            });
  // Accumulate smallest first to limit rounding.
  double total = 0.0;
  for (auto it = report.pair_contributions.rbegin(); it != report.pair_contributions.rend(); ++it) {
    total += it->contribution;
  }
  report.probability = std::clamp(total, 0.0, 1.0);
  return report;
}

}  // namespace superset
