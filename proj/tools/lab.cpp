// Command-line entry point: `lab <experiment> [--config file] [--seed n] [--out dir]`.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "aplab/experiments.hpp"

int main(int argc, char** argv) {
  using aplab::ExitCode;

  CLI::App app{"Numerical checks for asymptotic pairs and bounded transforms"};
  std::string positional;
  std::string experiment;
  std::string config_path;
  std::uint64_t seed = 0;
  std::string out;
  bool list = false;

  std::string names;
  for (const auto& n : aplab::experiment_names()) names += (names.empty() ? "" : ", ") + n;
  app.add_option("experiment_name", positional, "Experiment to run: " + names);
  app.add_option("--experiment,-e", experiment, "Experiment to run (overrides the positional name)");
  app.add_option("--config,-c", config_path, "JSON config file");
  auto* seed_opt = app.add_option("--seed,-s", seed, "Root seed (default 42)");
  auto* out_opt = app.add_option("--out,-o", out, "Output directory (default lab_out)");
  app.add_flag("--list", list, "List experiments and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return static_cast<int>(ExitCode::InvalidConfig);
  }

  if (list) {
    for (const auto& n : aplab::experiment_names()) std::cout << n << '\n';
    return 0;
  }

  aplab::ExperimentConfig config;
  if (!config_path.empty()) {
    try {
      config = aplab::load_config(config_path);
    } catch (const std::exception& e) {
      std::cerr << e.what() << '\n';
      return static_cast<int>(ExitCode::InvalidConfig);
    }
  }
  if (!positional.empty()) config.experiment = positional;
  if (!experiment.empty()) config.experiment = experiment;
  if (*seed_opt) config.seed = seed;
  if (*out_opt) config.out_dir = out;
  if (config.experiment.empty()) {
    std::cerr << "no experiment given; expected one of: " << names << '\n';
    return static_cast<int>(ExitCode::UnknownExperiment);
  }
  return static_cast<int>(aplab::run_experiment(config, std::cerr));
}
