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

#ifndef NTOFFOLI_CLI_CONFIG_H_
#define NTOFFOLI_CLI_CONFIG_H_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ntoffoli/circuit_synth.h"
#include "ntoffoli/cli/table.h"
#include "ntoffoli/qec.h"

namespace ntoffoli::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Experiment { kSweepDrive, kSweepN, kQec3, kSteane, kSynth, kTable1Check, kNormError };

Experiment parse_experiment(const std::string& name);
std::string experiment_name(Experiment e);

// "40 MHz" -> 2 pi 40e6 rad/s. Bare numbers are rejected.
double parse_frequency(const std::string& text);
// "30 us", "30 µs", "50 ns" -> seconds.
double parse_time(const std::string& text);

struct NoiseConfig {
  bool enabled = false;
  double t1 = 30e-6;
  double t2 = 30e-6;
};

struct ExperimentConfig {
  Experiment experiment = Experiment::kSweepDrive;
  std::uint64_t seed = 1;
  int threads = 1;
  std::string output;  // empty: stdout
  OutputFormat format = OutputFormat::kCsv;

  int n = 2;                                   // controls
  double coupling = 2.0 * 3.14159265358979323846 * 40e6;  // J, rad/s
  double theta = 0.0;
  std::vector<double> ratios{4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18, 19, 20};  // J / Omega
  double ratio = 8.0;                          // fixed J / Omega where a single value is used
  std::vector<int> n_values{1, 2, 3, 4, 5};
  std::vector<std::string> gates{"itoffoli", "cnotn"};
  NoiseConfig noise;

  GateMode mode = GateMode::kDriven;
  std::string averaging = "stabilizer";  // or "monte-carlo"
  std::size_t samples = 2000;

  std::string table_path;
  double scan_lo = 0.8, scan_hi = 1.2;  // time scan in units of pi / (2 Omega)
  int scan_points = 41;

  SynthesisTargets targets;
  int synth_seeds = 32;
};

inline constexpr int kMaxSweepN = 6;

ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config(const std::string& yaml_text, const std::string& base_dir = ".");
void validate(const ExperimentConfig& cfg);

}  // namespace ntoffoli::cli

#endif  // NTOFFOLI_CLI_CONFIG_H_
