#include "superset_cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>

#include "superset/errors.hpp"
#include "superset/linear_h1.hpp"

namespace superset::cli {

using nlohmann::json;

namespace {

const char* log_base_name(LogBase b) {
  switch (b) {
    case LogBase::kNone:
      return "none";
    case LogBase::kNatural:
      return "e";
    case LogBase::kTen:
      return "10";
  }
  return "none";
}

LogBase log_base_from(const std::string& s) {
  if (s == "none") return LogBase::kNone;
  if (s == "e") return LogBase::kNatural;
  if (s == "10") return LogBase::kTen;
  throw ConfigError("unknown log base '" + s + "'");
}

std::vector<RankedSubset> top_subsets(const ModelPosterior& post, const Dataset& ds) {
  std::vector<std::size_t> order(post.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return post.probabilities[a] > post.probabilities[b];
  });
  std::vector<RankedSubset> out;
  for (std::size_t i = 0; i < std::min(kTopSubsets, order.size()); ++i) {
    out.push_back({post.subsets[order[i]].label(ds.names()), post.probabilities[order[i]]});
  }
  return out;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void validate(const RunConfig& config) {
  if (config.folds < 2) {
    throw ConfigError("--folds must be at least 2, got " + std::to_string(config.folds));
  }
  if (!(config.hyper_a > 2.0) || !std::isfinite(config.hyper_a)) {
    throw ConfigError("--hyper-a must exceed 2");
  }
  if (config.format != "json" && config.format != "csv") {
    throw ConfigError("--format must be json or csv, got '" + config.format + "'");
  }
}

PipelineSettings pipeline_settings(const RunConfig& config) {
  PipelineSettings s;
  s.folds = config.folds;
  s.seed = config.seed;
  s.hyper_a = config.hyper_a;
  s.mode = config.inclusive ? SupersetMode::kInclusive : SupersetMode::kStrict;
  s.include_empty = config.include_empty;
  s.threads = config.threads;
  return s;
}

RunReport make_report(const PipelineResult& result, const Dataset& ds, const std::string& source,
                      const RunConfig& config) {
  RunReport r;
  r.probability = result.report.probability;
  r.strict = result.report.mode == SupersetMode::kStrict;
  r.folds = config.folds;
  r.seed = config.seed;
  r.a = config.hyper_a;
  r.model_space_size = result.model_space_size;
  r.top_h0 = top_subsets(result.post_h0, ds);
  r.top_h1 = top_subsets(result.post_h1, ds);
  for (const auto& pc : result.report.pair_contributions) {
    if (r.top_pairs.size() >= kTopPairs || pc.contribution < kMinListedContribution) break;
    r.top_pairs.push_back({pc.h1_subset.label(ds.names()), pc.h0_subset.label(ds.names()),
                           pc.contribution});
  }
  r.dataset = {ds.n(), ds.p(), source};
  r.config = config;
  r.prng = kFoldPrngName;
  r.warnings = result.post_h1.warnings;
  r.warnings.insert(r.warnings.end(), result.post_h0.warnings.begin(), result.post_h0.warnings.end());
  return r;
}

json to_json(const RunConfig& c) {
  return json{{"data", c.data_path},
              {"response", c.response},
              {"log_response", log_base_name(c.log_base)},
              {"folds", c.folds},
              {"seed", c.seed},
              {"hyper_a", c.hyper_a},
              {"inclusive", c.inclusive},
              {"include_empty", c.include_empty},
              {"precision_cols", c.precision_columns},
              {"out", c.out_path},
              {"format", c.format},
              {"threads", c.threads}};
}

RunConfig config_from_json(const json& j) {
  RunConfig c;
  c.data_path = j.at("data").get<std::string>();
  c.response = j.at("response").get<std::string>();
  c.log_base = log_base_from(j.at("log_response").get<std::string>());
  c.folds = j.at("folds").get<std::size_t>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.hyper_a = j.at("hyper_a").get<double>();
  c.inclusive = j.at("inclusive").get<bool>();
  c.include_empty = j.at("include_empty").get<bool>();
  c.precision_columns = j.at("precision_cols").get<std::vector<std::string>>();
  c.out_path = j.at("out").get<std::string>();
  c.format = j.at("format").get<std::string>();
  c.threads = j.at("threads").get<std::size_t>();
  return c;
}

json to_json(const RunReport& r) {
  auto ranked = [](const std::vector<RankedSubset>& v) {
    json arr = json::array();
    for (const auto& s : v) arr.push_back({{"subset", s.subset}, {"probability", s.probability}});
    return arr;
  };
  json pairs = json::array();
  for (const auto& p : r.top_pairs) {
    pairs.push_back({{"h1_subset", p.h1_subset}, {"h0_subset", p.h0_subset}, {"contribution", p.contribution}});
  }
  return json{{"probability", r.probability},
              {"strict", r.strict},
              {"folds", r.folds},
              {"seed", r.seed},
              {"a", r.a},
              {"model_space_size", r.model_space_size},
              {"model_space", r.config.include_empty ? "all subsets" : "all nonempty subsets"},
              {"top_h0", ranked(r.top_h0)},
              {"top_h1", ranked(r.top_h1)},
              {"top_pairs", pairs},
              {"dataset", {{"n", r.dataset.n}, {"p", r.dataset.p}, {"source", r.dataset.source}}},
              {"config", to_json(r.config)},
              {"prng", r.prng},
              {"warnings", r.warnings}};
}

RunReport report_from_json(const json& j) {
  auto ranked = [](const json& arr) {
    std::vector<RankedSubset> v;
    for (const auto& e : arr) v.push_back({e.at("subset").get<std::string>(), e.at("probability").get<double>()});
    return v;
  };
  RunReport r;
  r.probability = j.at("probability").get<double>();
  r.strict = j.at("strict").get<bool>();
  r.folds = j.at("folds").get<std::size_t>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.a = j.at("a").get<double>();
  r.model_space_size = j.at("model_space_size").get<std::size_t>();
  r.top_h0 = ranked(j.at("top_h0"));
  r.top_h1 = ranked(j.at("top_h1"));
  for (const auto& e : j.at("top_pairs")) {
    r.top_pairs.push_back({e.at("h1_subset").get<std::string>(), e.at("h0_subset").get<std::string>(),
                           e.at("contribution").get<double>()});
  }
  const auto& d = j.at("dataset");
  r.dataset = {d.at("n").get<std::size_t>(), d.at("p").get<std::size_t>(), d.at("source").get<std::string>()};
  r.config = config_from_json(j.at("config"));
  r.prng = j.at("prng").get<std::string>();
  r.warnings = j.at("warnings").get<std::vector<std::string>>();
  return r;
}

std::string serialize(const RunReport& report) { return to_json(report).dump(2) + "\n"; }

std::string posterior_table_csv(const PipelineResult& result, const Dataset& ds) {
  std::string out = "subset,h0_probability,h1_probability\n";
  for (std::size_t i = 0; i < result.post_h0.size(); ++i) {
    const auto& s = result.post_h0.subsets[i];
    out += "\"" + s.label(ds.names()) + "\"," + format_double(result.post_h0.probabilities[i]) + "," +
           format_double(result.post_h1.probability_of(s)) + "\n";
  }
  return out;
}

IngestedData load_data(const RunConfig& config) {
  validate(config);
  if (config.data_path.empty()) throw ConfigError("--data is required");
  return ingest(config.data_path, IngestOptions{config.response, config.log_base});
}

RunReport run_on(const IngestedData& data, const RunConfig& config, PipelineResult* result_out) {
  validate(config);
  auto result = run_pipeline(data.dataset, pipeline_settings(config));
  auto report = make_report(result, data.dataset, data.source, config);
  if (result_out) *result_out = std::move(result);
  return report;
}

RunReport cmd_run(const RunConfig& config, PipelineResult* result_out) {
  return run_on(load_data(config), config, result_out);
}

std::vector<SweepRow> sweep_folds(const IngestedData& data, const RunConfig& config,
                                  std::size_t m_min, std::size_t m_max) {
  validate(config);
  const auto& ds = data.dataset;
  if (m_min < 2 || m_min > m_max) {
    throw ConfigError("fold sweep range [" + std::to_string(m_min) + ", " + std::to_string(m_max) +
                      "] is invalid");
  }
  if (m_max > ds.n()) {
    throw ConfigError("fold sweep maximum " + std::to_string(m_max) + " exceeds n = " +
                      std::to_string(ds.n()));
  }
  auto settings = pipeline_settings(config);
  const auto space = enumerate_subsets(ds.p(), settings.include_empty);
  const auto post_h1 = h1_posterior(ds, space, settings.hyper_a, settings.threads);
  std::vector<SweepRow> rows;
  for (std::size_t m = m_min; m <= m_max; ++m) {
    settings.folds = m;
    rows.push_back({m, run_pipeline(ds, settings, post_h1).report.probability});
  }
  return rows;
}

std::vector<SweepRow> cmd_sweep_folds(const RunConfig& config, std::size_t m_min, std::size_t m_max) {
  return sweep_folds(load_data(config), config, m_min, m_max);
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
  std::string out = "folds,probability\n";
  for (const auto& r : rows) out += std::to_string(r.folds) + "," + format_double(r.probability) + "\n";
  return out;
}

std::vector<SweepRow> sweep_from_csv(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line) || line != "folds,probability") {
    throw DataError("sweep CSV must start with the header 'folds,probability'");
  }
  std::vector<SweepRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw DataError("malformed sweep row '" + line + "'");
    rows.push_back({static_cast<std::size_t>(std::stoull(line.substr(0, comma))),
                    std::stod(line.substr(comma + 1))});
  }
  return rows;
}

SplitReports split_run(const IngestedData& data, const RunConfig& config) {
  validate(config);
  const auto split = precision_split(data.dataset, config.precision_columns);
  auto require = [&](const std::optional<Dataset>& part, std::size_t size, const char* name) -> const Dataset& {
    if (!part) {
      throw EmptyPartition(std::string(name) + " partition has " + std::to_string(size) +
                           " observations; at least 2 are required");
    }
    if (size < config.folds) {
      throw ConfigError(std::string(name) + " partition has " + std::to_string(size) +
                        " observations, fewer than --folds " + std::to_string(config.folds) +
                        "; reduce --folds");
    }
    return *part;
  };
  const auto& fine = require(split.fine, split.fine_rows.size(), "fine");
  const auto& coarse = require(split.coarse, split.coarse_rows.size(), "coarse");

  SplitReports out;
  out.precision_columns = config.precision_columns;
  out.fine_size = split.fine_rows.size();
  out.coarse_size = split.coarse_rows.size();
  out.fine = run_on(IngestedData{fine, data.source + "#fine", data.schema}, config);
  out.coarse = run_on(IngestedData{coarse, data.source + "#coarse", data.schema}, config);
  return out;
}

SplitReports cmd_split_run(const RunConfig& config) { return split_run(load_data(config), config); }

json to_json(const SplitReports& reports) {
  return json{{"precision_cols", reports.precision_columns},
              {"fine", {{"partition_size", reports.fine_size}, {"report", to_json(reports.fine)}}},
              {"coarse", {{"partition_size", reports.coarse_size}, {"report", to_json(reports.coarse)}}}};
}

namespace {

// Standard normal via Box-Muller on 53-bit uniforms; std::normal_distribution
// is implementation-defined, so it cannot give byte-identical files everywhere.
class NormalSource {
 public:
  explicit NormalSource(std::mt19937_64& rng) : rng_(rng) {}

  double operator()() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - static_cast<double>(rng_() >> 11) * 0x1.0p-53;  // (0, 1]
    const double u2 = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * 3.14159265358979323846 * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  std::mt19937_64& rng_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace

std::string synth_csv(const SynthConfig& config) {
  if (config.grid.size() < 2) throw ConfigError("synthetic grid needs at least 2 points");
  if (config.replicates < 2) throw ConfigError("synthetic design needs at least 2 replicates per point");
  if (!(config.noise_sd >= 0.0)) throw ConfigError("noise sd must be nonnegative");

  std::mt19937_64 rng(config.seed);
  NormalSource normal(rng);
  std::string out = "x_T,x_U";
  for (std::size_t d = 0; d < config.distractors; ++d) out += ",d" + std::to_string(d + 1);
  out += ",Y\n";
  const std::uint64_t g = config.grid.size();
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % g;
  for (std::size_t r = 0; r < config.replicates; ++r) {
    for (double x : config.grid) {
      std::string row = format_double(x) + "," + format_double(x * x);
      for (std::size_t d = 0; d < config.distractors; ++d) {
        std::uint64_t draw;
        do {
          draw = rng();
        } while (draw >= limit);
        row += "," + format_double(config.grid[draw % g]);
      }
      const double mean = config.alpha + config.beta1 * x + config.beta2 * x * x;
      row += "," + format_double(mean + config.noise_sd * normal()) + "\n";
      out += row;
    }
  }
  return out;
}

void cmd_synth(const SynthConfig& config, const std::string& out_path) {
  write_output(out_path, synth_csv(config));
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw DataError("cannot open output file '" + path + "'");
  file << text;
  if (!file) throw DataError("failed writing output file '" + path + "'");
}

}  // namespace superset::cli
