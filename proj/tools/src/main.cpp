#include <CLI11.hpp>

#include <iostream>
#include <sstream>

#include "superset/errors.hpp"
#include "superset_cli/commands.hpp"

namespace {

using superset::cli::LogBase;
using superset::cli::RunConfig;
using superset::cli::SynthConfig;

constexpr int kExitConfig = 2;
constexpr int kExitData = 3;
constexpr int kExitNumerical = 4;

int exit_code(const superset::Error& e) {
  switch (e.category()) {
    case superset::ErrorCategory::kConfig:
      return kExitConfig;
    case superset::ErrorCategory::kData:
      return kExitData;
    case superset::ErrorCategory::kNumerical:
      return kExitNumerical;
  }
  return kExitNumerical;
}

LogBase parse_log_base(const std::string& s) {
  if (s.empty()) return LogBase::kNone;
  if (s == "e") return LogBase::kNatural;
  if (s == "10") return LogBase::kTen;
  throw superset::ConfigError("--log-response accepts e or 10, got '" + s + "'");
}

struct RunFlags {
  RunConfig config;
  std::string log_response;
};

void add_run_flags(CLI::App* cmd, RunFlags& f) {
  auto& c = f.config;
  cmd->add_option("--data", c.data_path, "Tab- or comma-separated data file with a header row")->required();
  cmd->add_option("--response", c.response, "Response column (default: Y for the diabetes schema)");
  cmd->add_flag("--log-response{e}", f.log_response, "Log-transform the response (=e or =10)");
  cmd->add_option("--folds", c.folds, "Cross-validation folds")->capture_default_str();
  cmd->add_option("--seed", c.seed, "Fold-assignment seed")->capture_default_str();
  cmd->add_option("--hyper-a", c.hyper_a, "Hyper-g prior parameter a (> 2)")->capture_default_str();
  cmd->add_flag("--inclusive", c.inclusive, "Count M = M* as a superset pair");
  cmd->add_flag("--include-empty,!--exclude-empty", c.include_empty,
                "Include the intercept-only model in the model space")
      ->capture_default_str();
  cmd->add_option("--precision-cols", c.precision_columns, "Columns whose recording precision splits the data")
      ->delimiter(',')
      ->capture_default_str();
  cmd->add_option("--out", c.out_path, "Output file (default: stdout)");
  cmd->add_option("--format", c.format, "Output format: json or csv")->capture_default_str();
  cmd->add_option("--threads", c.threads, "Worker threads (0 = all cores)")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Superset model probability for linear regression variable selection"};
  app.require_subcommand(1);

  RunFlags run_flags;
  auto* run = app.add_subcommand("run", "Score every covariate subset and report the superset probability");
  add_run_flags(run, run_flags);

  RunFlags sweep_flags;
  std::size_t m_min = 2;
  std::size_t m_max = 15;
  auto* sweep = app.add_subcommand("sweep", "Superset probability for each fold count in a range");
  add_run_flags(sweep, sweep_flags);
  sweep->add_option("--min-folds", m_min, "Smallest fold count")->capture_default_str();
  sweep->add_option("--max-folds", m_max, "Largest fold count")->capture_default_str();

  RunFlags split_flags;
  auto* split = app.add_subcommand("split", "Run separately on fine- and coarse-precision observations");
  add_run_flags(split, split_flags);

  SynthConfig synth_config;
  std::string synth_out;
  auto* synth = app.add_subcommand("synth", "Write a replicated-design quadratic dataset (CSV)");
  synth->add_option("--replicates", synth_config.replicates, "Observations per design point")->capture_default_str();
  synth->add_option("--grid", synth_config.grid, "Design points for x_T")->delimiter(',')->capture_default_str();
  synth->add_option("--alpha", synth_config.alpha, "Intercept")->capture_default_str();
  synth->add_option("--beta1", synth_config.beta1, "Linear coefficient on x_T")->capture_default_str();
  synth->add_option("--beta2", synth_config.beta2, "Quadratic coefficient on x_T (0 = linear truth)")->capture_default_str();
  synth->add_option("--noise-sd", synth_config.noise_sd, "Noise standard deviation")->capture_default_str();
  synth->add_option("--distractors", synth_config.distractors, "Independent grid-valued columns")->capture_default_str();
  synth->add_option("--seed", synth_config.seed, "Generator seed")->capture_default_str();
  synth->add_option("--out", synth_out, "Output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    if (*run) {
      auto& c = run_flags.config;
      c.log_base = parse_log_base(run_flags.log_response);
      superset::PipelineResult result;
      const auto data = superset::cli::load_data(c);
      const auto report = superset::cli::run_on(data, c, &result);
      if (c.format == "csv") {
        superset::cli::write_output(c.out_path, superset::cli::posterior_table_csv(result, data.dataset));
      } else {
        superset::cli::write_output(c.out_path, superset::cli::serialize(report));
      }
      for (const auto& w : report.warnings) std::cerr << "warning: " << w << '\n';
      std::cerr << "superset probability: " << report.probability << " (n=" << report.dataset.n
                << ", p=" << report.dataset.p << ", subsets=" << report.model_space_size << ")\n";
    } else if (*sweep) {
      auto& c = sweep_flags.config;
      c.log_base = parse_log_base(sweep_flags.log_response);
      const auto rows = superset::cli::cmd_sweep_folds(c, m_min, m_max);
      if (c.format == "json") {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& r : rows) arr.push_back({{"folds", r.folds}, {"probability", r.probability}});
        superset::cli::write_output(c.out_path, arr.dump(2) + "\n");
      } else {
        superset::cli::write_output(c.out_path, superset::cli::sweep_to_csv(rows));
      }
      for (const auto& r : rows) {
        std::cerr << "folds=" << r.folds << " probability=" << r.probability
                  << (r.folds == 10 ? "  <- reference (10-fold)" : "") << '\n';
      }
    } else if (*split) {
      auto& c = split_flags.config;
      c.log_base = parse_log_base(split_flags.log_response);
      const auto reports = superset::cli::cmd_split_run(c);
      superset::cli::write_output(c.out_path, superset::cli::to_json(reports).dump(2) + "\n");
      std::cerr << "fine (n=" << reports.fine_size << "): " << reports.fine.probability << '\n'
                << "coarse (n=" << reports.coarse_size << "): " << reports.coarse.probability << '\n';
    } else if (*synth) {
      superset::cli::cmd_synth(synth_config, synth_out);
    }
  } catch (const superset::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return 0;
}
