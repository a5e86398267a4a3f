#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "superset/data_model.hpp"
#include "superset/model_posterior.hpp"
#include "superset/superset.hpp"

namespace superset {

struct PipelineSettings {
  std::size_t folds = 10;
  std::uint64_t seed = 0;
  double hyper_a = 3.0;
  SupersetMode mode = SupersetMode::kStrict;
  bool include_empty = true;
  std::size_t threads = 0;  // 0 = hardware concurrency
};

struct PipelineResult {
  ModelPosterior post_h1;
  ModelPosterior post_h0;
  SupersetReport report;
  std::size_t model_space_size = 0;
};

/// Enumerates the model space, scores both hypotheses and combines them.
PipelineResult run_pipeline(const Dataset& ds, const PipelineSettings& settings);

/// Same as run_pipeline with a precomputed H1 posterior (it does not depend
/// on the fold plan, so sweeps over folds or seeds can share it).
PipelineResult run_pipeline(const Dataset& ds, const PipelineSettings& settings,
                            const ModelPosterior& post_h1);

}  // namespace superset
