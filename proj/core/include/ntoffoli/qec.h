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

#ifndef NTOFFOLI_QEC_H_
#define NTOFFOLI_QEC_H_

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ntoffoli/evolution.h"
#include "ntoffoli/fidelity.h"
#include "ntoffoli/model.h"

namespace ntoffoli {

enum class GateMode { kIdeal, kDriven };

// alpha|0> + beta|1>, normalized on construction.
class QubitState {
 public:
  QubitState(Complex alpha, Complex beta);
  static QubitState zero() { return {1.0, 0.0}; }
  static QubitState one() { return {0.0, 1.0}; }
  // Bloch angles: cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>
  static QubitState from_bloch(double theta, double phi);
  Complex alpha() const { return alpha_; }
  Complex beta() const { return beta_; }

 private:
  Complex alpha_;
  Complex beta_;
};

// The six stabilizer states |0>, |1>, |+>, |->, |+i>, |-i>.
std::array<QubitState, 6> stabilizer_states();

struct CodeSetup {
  GateMode mode = GateMode::kIdeal;
  std::optional<NoiseSpec> noise;
  std::optional<int> error_site;  // bit-flip code only
  double coupling = 2.0 * kPi * 40e6;
  double ratio = 8.0;  // J / Omega
  OdeOptions ode{1e-9, 1e-12};
};

struct CodeRun {
  CodeSetup setup;
  QubitState input = QubitState::zero();
};

// One drive window: a device configuration, its drive, and the ideal gate
// the window implements.
struct GateStep {
  std::string label;
  DeviceModel device;
  DriveSpec drive;
  Operator ideal;
};

struct Schedule {
  int num_qubits = 0;
  double window = 0.0;  // pi / (2 Omega)
  std::vector<GateStep> steps;
  std::size_t drive_windows() const { return steps.size(); }
};

// Register (q1, q2, q3) = indices 0, 1, 2; q3 carries the data.
// CNOT^2 from q3 onto q1, q2; CNOT^2 again; i-Toffoli on q3.
Schedule bitflip_schedule(double coupling, double ratio);
inline constexpr int kBitflipDataQubit = 2;

// Register (1, 2, 3, Q, 4, 5, 6) = indices 0..6; Q carries the data.
Schedule steane_schedule(double coupling, double ratio);
inline constexpr int kSteaneDataQubit = 3;

struct LogicalPair {
  StateVector zero_l;
  StateVector one_l;
};

// Code words with the phases produced by the CNOT^n encoder.
LogicalPair steane_logical_states();

// Linear map from the data-qubit operator |i><j| to the register output.
// Holds out[i][j] = Encoder(|init_i><init_j|).
class EncodingMap {
 public:
  EncodingMap(std::array<std::array<Operator, 2>, 2> out) : out_(std::move(out)) {}
  Operator output(const QubitState& psi) const;
  const Operator& block(int i, int j) const { return out_[i][j]; }

 private:
  std::array<std::array<Operator, 2>, 2> out_;
};

EncodingMap bitflip_map(const CodeSetup& setup);
EncodingMap steane_map(const CodeSetup& setup);

// Overlap of the data qubit's reduced state with the input.
// State fidelities of one input against a precomputed encoding map.
double bitflip_fidelity(const EncodingMap& map, const QubitState& psi);
double steane_fidelity(const EncodingMap& map, const QubitState& psi);

double run_bitflip_code(const CodeRun& run);

struct SteaneResult {
  DensityMatrix state;
  double fidelity;
};
SteaneResult steane_encode(const CodeRun& run);

// Haar average over the input qubit, evaluated exactly on the six
// stabilizer states (a projective 2-design).
double bloch_average(const std::function<double(const QubitState&)>& f);
MonteCarloEstimate bloch_average_monte_carlo(const std::function<double(const QubitState&)>& f,
                                             std::size_t samples, std::uint64_t seed);

double bitflip_average_fidelity(const CodeSetup& setup);
double steane_average_fidelity(const CodeSetup& setup);

}  // namespace ntoffoli

#endif  // NTOFFOLI_QEC_H_
