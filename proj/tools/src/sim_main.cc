// Copyright 2026 The ntoffoli Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// sim <experiment> --config <file> [--seed N] [--out path] [--threads N] [--format csv|json]

#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include "ntoffoli/cli/config.h"
#include "ntoffoli/cli/experiments.h"

int main(int argc, char** argv) {
  namespace cli = ntoffoli::cli;
  CLI::App app{"ntoffoli pulse-level gate simulator"};
  std::string experiment, config_path, out, format;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  app.add_option("experiment", experiment,
                 "sweep-drive | sweep-n | qec3 | steane | synth | table1-check | norm-error")
      ->required();
  app.add_option("--config", config_path, "YAML experiment config")->required()->check(CLI::ExistingFile);
  app.add_option("--seed", seed, "RNG seed");
  app.add_option("--out", out, "output file (default stdout)");
  app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  CLI11_PARSE(app, argc, argv);

  try {
    cli::ExperimentConfig cfg = cli::load_config(config_path);
    const cli::Experiment requested = cli::parse_experiment(experiment);
    if (requested != cfg.experiment) {
      std::cerr << "sim: config describes '" << cli::experiment_name(cfg.experiment) << "', running '" << experiment
                << "' with its settings\n";
      cfg.experiment = requested;
    }
    if (seed) cfg.seed = *seed;
    if (threads) cfg.threads = *threads;
    if (!out.empty()) cfg.output = out;
    if (!format.empty()) cfg.format = format == "json" ? cli::OutputFormat::kJson : cli::OutputFormat::kCsv;

    const cli::ExperimentResult result = cli::run_experiment(cfg);
    if (cfg.output.empty()) {
      cli::write_table(result.table, cfg.format, std::cout);
    } else {
      std::ofstream f(cfg.output);
      if (!f) throw cli::ConfigError("cannot write " + cfg.output);
      cli::write_table(result.table, cfg.format, f);
      if (!f) throw cli::ConfigError("write failed for " + cfg.output);
    }
    if (!result.message.empty()) std::cerr << "sim: " << result.message << '\n';
    return result.complete ? 0 : 3;
  } catch (const cli::ConfigError& e) {
    std::cerr << "sim: config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "sim: " << e.what() << '\n';
    return 1;
  }
}
