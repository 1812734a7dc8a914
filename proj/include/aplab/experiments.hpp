#pragma once

// Named verification suites and the runner behind the `lab` command line.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "aplab/report.hpp"

namespace aplab {

enum class ExitCode : int {
  Ok = 0,
  ChecksFailed = 1,
  UnknownExperiment = 2,
  InvalidConfig = 3,
  UnwritableOutput = 4,
  IoFailure = 5,
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct GridSpec {
  double lo = 1.0;
  double hi = 1e3;
  std::size_t points = 60;
};

/// Unset optional fields take per-experiment defaults (see resolve()).
struct ExperimentConfig {
  std::string experiment;
  std::uint64_t seed = 42;
  std::optional<std::size_t> trials;
  std::optional<std::vector<std::size_t>> dims;
  std::optional<GridSpec> t_grid;
  std::optional<std::vector<double>> n_grid;
  std::optional<int> n_basis;
  std::optional<int> clifford_n;
  std::optional<double> kernel_tol;
  std::filesystem::path out_dir = "lab_out";
};

const std::vector<std::string>& experiment_names();
bool is_known_experiment(const std::string& name);

/// Parses a JSON config document.  Unknown keys or ill-typed values throw ConfigError.
ExperimentConfig config_from_json(const Json& j);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Fills per-experiment defaults and validates grids; throws ConfigError.
ExperimentConfig resolve(const ExperimentConfig& config);

struct CheckSummary {
  std::string name;
  std::string statement;
  std::size_t passed = 0;
  std::size_t total = 0;
  Json details = Json::object();
  bool pass() const { return total > 0 && passed == total; }
};

struct ExperimentResult {
  std::string experiment;
  std::vector<CheckSummary> checks;
  std::vector<BoundCertificate> certificates;
  std::vector<ReportFile> files;  // report.json, certificates.jsonl, CSVs
  bool pass = false;
};

/// Runs the suite in memory.  Throws ConfigError for an unknown experiment or bad config.
ExperimentResult execute_experiment(const ExperimentConfig& config);

/// Full pipeline including file output; never throws.  Messages go to `log`.
ExitCode run_experiment(const ExperimentConfig& config, std::ostream& log);

}  // namespace aplab
