#include "superset/pipeline.hpp"

#include "superset/linear_h1.hpp"
#include "superset/local_h0.hpp"

namespace superset {

PipelineResult run_pipeline(const Dataset& ds, const PipelineSettings& settings) {
  const auto space = enumerate_subsets(ds.p(), settings.include_empty);
  return run_pipeline(ds, settings, h1_posterior(ds, space, settings.hyper_a, settings.threads));
}

PipelineResult run_pipeline(const Dataset& ds, const PipelineSettings& settings,
                            const ModelPosterior& post_h1) {
  const auto space = enumerate_subsets(ds.p(), settings.include_empty);
  const auto plan = make_folds(ds.n(), settings.folds, settings.seed);
  PipelineResult result;
  result.model_space_size = space.size();
  result.post_h1 = post_h1;
  result.post_h0 = h0_posterior(ds, space, plan, settings.threads);
  result.report = superset_probability(result.post_h0, result.post_h1, settings.mode);
  return result;
}

}  // namespace superset
