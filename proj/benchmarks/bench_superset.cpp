#include <benchmark/benchmark.h>

#include <array>
#include <random>
#include <string>
#include <vector>

#include "superset/data_model.hpp"
#include "superset/linear_h1.hpp"
#include "superset/local_h0.hpp"
#include "superset/numerics.hpp"
#include "superset/pipeline.hpp"
#include "superset_cli/ingest.hpp"

using namespace superset;

namespace {

const Dataset& diabetes() {
  static const Dataset ds =
      cli::ingest(std::string(SUPERSET_DATA_DIR) + "/diabetes.tab.txt", {"", cli::LogBase::kNatural}).dataset;
  return ds;
}

void BM_LogGIntegral(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  double r2 = 0.05;
  for (auto _ : state) {
    benchmark::DoNotOptimize(log_g_integral(442, k, r2, 3.0));
    r2 = r2 < 0.9 ? r2 + 0.01 : 0.05;
  }
}
BENCHMARK(BM_LogGIntegral)->Arg(1)->Arg(5)->Arg(10);

void BM_SolveCubic(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.01, 10.0);
  std::vector<std::array<double, 4>> coeffs;
  for (int i = 0; i < 1024; ++i) coeffs.push_back(cubic_coefficients(2 + rng() % 20, u(rng), u(rng), u(rng)));
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& a = coeffs[i++ % coeffs.size()];
    benchmark::DoNotOptimize(solve_cubic(a[0], a[1], a[2], a[3]));
  }
}
BENCHMARK(BM_SolveCubic);

void BM_MaximizeLocalMl(benchmark::State& state) {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> z(0.0, 1.0);
  std::vector<LocalGroup> groups(256);
  for (auto& g : groups) {
    std::vector<double> ys(1 + rng() % 6);
    for (double& y : ys) y = z(rng);
    fill_group_moments(g, ys);
  }
  const LocalPrior prior{0.1, 0.8};
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(maximize_local_ml(groups[i++ % groups.size()], prior));
}
BENCHMARK(BM_MaximizeLocalMl);

void BM_H1Posterior(benchmark::State& state) {
  const auto& ds = diabetes();
  const auto space = enumerate_subsets(ds.p(), true);
  for (auto _ : state) benchmark::DoNotOptimize(h1_posterior(ds, space, 3.0, 1));
}
BENCHMARK(BM_H1Posterior)->Unit(benchmark::kMillisecond);

void BM_DiabetesPipeline(benchmark::State& state) {
  const auto& ds = diabetes();
  PipelineSettings settings;
  settings.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(run_pipeline(ds, settings));
}
BENCHMARK(BM_DiabetesPipeline)->Unit(benchmark::kMillisecond)->Iterations(3);

}  // namespace

BENCHMARK_MAIN();
