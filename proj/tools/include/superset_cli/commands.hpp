#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "superset/pipeline.hpp"
#include "superset_cli/ingest.hpp"

namespace superset::cli {

struct RunConfig {
  std::string data_path;
  std::string response;  // empty: diabetes auto-detect
  LogBase log_base = LogBase::kNone;
  std::size_t folds = 10;
  std::uint64_t seed = 0;
  double hyper_a = 3.0;
  bool inclusive = false;
  bool include_empty = true;
  std::vector<std::string> precision_columns = kDefaultPrecisionColumns;
  std::string out_path;       // empty: stdout
  std::string format = "json";  // json | csv
  std::size_t threads = 0;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Throws ConfigError when a setting is out of range.
void validate(const RunConfig& config);

PipelineSettings pipeline_settings(const RunConfig& config);

struct RankedSubset {
  std::string subset;
  double probability = 0.0;
  friend bool operator==(const RankedSubset&, const RankedSubset&) = default;
};

struct RankedPair {
  std::string h1_subset;
  std::string h0_subset;
  double contribution = 0.0;
  friend bool operator==(const RankedPair&, const RankedPair&) = default;
};

struct DatasetInfo {
  std::size_t n = 0;
  std::size_t p = 0;
  std::string source;
  friend bool operator==(const DatasetInfo&, const DatasetInfo&) = default;
};

/// Serializable summary of one pipeline run.
struct RunReport {
  double probability = 0.0;
  bool strict = true;
  std::size_t folds = 0;
  std::uint64_t seed = 0;
  double a = 3.0;
  std::size_t model_space_size = 0;
  std::vector<RankedSubset> top_h0;
  std::vector<RankedSubset> top_h1;
  std::vector<RankedPair> top_pairs;
  DatasetInfo dataset;
  RunConfig config;
  std::string prng;
  std::vector<std::string> warnings;

  friend bool operator==(const RunReport&, const RunReport&) = default;
};

inline constexpr std::size_t kTopSubsets = 10;
inline constexpr std::size_t kTopPairs = 20;
inline constexpr double kMinListedContribution = 1e-15;

RunReport make_report(const PipelineResult& result, const Dataset& ds, const std::string& source,
                      const RunConfig& config);

nlohmann::json to_json(const RunReport& report);
RunReport report_from_json(const nlohmann::json& j);
nlohmann::json to_json(const RunConfig& config);
RunConfig config_from_json(const nlohmann::json& j);

/// Pretty-printed JSON followed by a newline.
std::string serialize(const RunReport& report);

/// "subset,h0_probability,h1_probability" table over the whole model space.
std::string posterior_table_csv(const PipelineResult& result, const Dataset& ds);

IngestedData load_data(const RunConfig& config);

/// Full pipeline on an already ingested dataset.
RunReport run_on(const IngestedData& data, const RunConfig& config,
                 PipelineResult* result_out = nullptr);

/// Ingest, score both hypotheses, combine.
RunReport cmd_run(const RunConfig& config, PipelineResult* result_out = nullptr);

struct SweepRow {
  std::size_t folds = 0;
  double probability = 0.0;
  friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

/// One pipeline run per fold count in [m_min, m_max], same seed throughout.
std::vector<SweepRow> sweep_folds(const IngestedData& data, const RunConfig& config,
                                  std::size_t m_min, std::size_t m_max);
std::vector<SweepRow> cmd_sweep_folds(const RunConfig& config, std::size_t m_min = 2,
                                      std::size_t m_max = 15);

/// Header "folds,probability", probabilities with 17 significant digits.
std::string sweep_to_csv(const std::vector<SweepRow>& rows);
std::vector<SweepRow> sweep_from_csv(const std::string& csv);

struct SplitReports {
  std::vector<std::string> precision_columns;
  std::size_t fine_size = 0;
  std::size_t coarse_size = 0;
  RunReport fine;
  RunReport coarse;
};

SplitReports split_run(const IngestedData& data, const RunConfig& config);
SplitReports cmd_split_run(const RunConfig& config);
nlohmann::json to_json(const SplitReports& reports);

struct SynthConfig {
  std::size_t replicates = 40;  // observations per design point
  std::vector<double> grid = {-2.0, -1.0, 0.0, 1.0, 2.0};
  double alpha = 1.0;
  double beta1 = 1.0;
  double beta2 = 1.0;
  double noise_sd = 0.5;
  std::size_t distractors = 2;
  std::uint64_t seed = 0;
};

/// Replicated-design data with mean alpha + beta1 x + beta2 x^2. Columns:
/// x_T, x_U = x_T^2, d1..dK (independent draws from the grid), Y.
std::string synth_csv(const SynthConfig& config);
void cmd_synth(const SynthConfig& config, const std::string& out_path);

/// Writes text to `path`, or to stdout when `path` is empty.
void write_output(const std::string& path, const std::string& text);

}  // namespace superset::cli
