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

#ifndef NTOFFOLI_CLI_EXPERIMENTS_H_
#define NTOFFOLI_CLI_EXPERIMENTS_H_

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "ntoffoli/cli/config.h"
#include "ntoffoli/cli/table.h"

namespace ntoffoli::cli {

struct ExperimentResult {
  Table table;
  bool complete = true;  // false drives a nonzero exit status
  std::string message;
};

// Runs fn(0..count-1) on up to threads workers; results keep index order.
template <typename T>
std::vector<T> parallel_map(std::size_t count, int threads, const std::function<T(std::size_t)>& fn);

// One parameter-table row compared against values derived from its circuit parameters.
struct QuantityCheck {
  std::string name;
  double derived;
  double printed;
  double tolerance;
  bool ok;
};
std::vector<QuantityCheck> check_table_row(const TableRow& row);

// Peak process fidelity of the n=2 driven gate built from a parameter-table row, scanned
// over t in [lo, hi] * pi / (2 Omega) with Omega = |J^z| / 8.
struct GateScan {
  double peak_fidelity;
  double peak_time;  // seconds
  double gate_time;  // pi / (2 Omega)
};
GateScan scan_table_gate(const TableRow& row, double lo, double hi, int points,
                         const std::optional<NoiseSpec>& noise = std::nullopt);

Table run_sweep_drive(const ExperimentConfig& cfg);
Table run_sweep_n(const ExperimentConfig& cfg);
Table run_qec3(const ExperimentConfig& cfg);
Table run_steane(const ExperimentConfig& cfg);
ExperimentResult run_synth(const ExperimentConfig& cfg);
Table run_table1_check(const ExperimentConfig& cfg);
Table run_norm_error(const ExperimentConfig& cfg);

ExperimentResult run_experiment(const ExperimentConfig& cfg);

}  // namespace ntoffoli::cli

#include "ntoffoli/cli/parallel.inl"

#endif  // NTOFFOLI_CLI_EXPERIMENTS_H_
