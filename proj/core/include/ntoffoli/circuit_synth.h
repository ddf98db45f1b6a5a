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

#ifndef NTOFFOLI_CIRCUIT_SYNTH_H_
#define NTOFFOLI_CIRCUIT_SYNTH_H_

#include <cstdint>
#include <istream>
#include <string>
#include <vector>

#include "ntoffoli/linalg.h"
#include "ntoffoli/model.h"

namespace ntoffoli {

// e^2 / (2 hbar) per inverse femtofarad, in rad/s: E^C = this * (K^-1)_ii
// with K in fF.
double charging_energy_per_inverse_ff();

// Star circuit: target transmon 0 coupled to controls 1..n through a
// junction E_z,i shunted by C_z,i. Energies angular (rad/s), capacitances fF.
class CircuitParams {
 public:
  CircuitParams(double e0, std::vector<double> ei, std::vector<double> ezi, double c0, std::vector<double> ci,
                std::vector<double> czi);
  // Identical controls.
  static CircuitParams symmetric(int n, double e0, double ei, double ez, double c0, double ci, double cz);

  int n_controls() const { return static_cast<int>(ei_.size()); }
  double e0() const { return e0_; }
  const std::vector<double>& ei() const { return ei_; }
  const std::vector<double>& ezi() const { return ezi_; }
  double c0() const { return c0_; }
  const std::vector<double>& ci() const { return ci_; }
  const std::vector<double>& czi() const { return czi_; }

 private:
  double e0_;
  std::vector<double> ei_, ezi_;
  double c0_;
  std::vector<double> ci_, czi_;
};

struct GateParams {
  double omega0 = 0.0;
  std::vector<double> omegai;
  std::vector<double> jz;    // J^z_i
  std::vector<double> jx;    // J^x_i
  RealMatrix jxij;           // J^x_ij, zero diagonal
  double alpha0 = 0.0;       // E^C_0 / 2
  std::vector<double> alphai;
  double alpha_rel0 = 0.0;   // -alpha_0 / omega_0
  std::vector<double> alpha_reli;
  double ratio0 = 0.0;       // E^J_0 / E^C_0
  std::vector<double> ratioi;
  // intermediate quantities
  RealVector charging;       // E^C_j
  RealVector josephson;      // E^J_j
  RealVector zeta;           // impedances
  RealMatrix kinv;           // K^-1 in energy units (8 E^C on the diagonal)
};

RealMatrix capacitance_matrix(const CircuitParams& p);

// Throws std::invalid_argument for a singular capacitance matrix.
GateParams derive_gate_params(const CircuitParams& p);

struct DriveDerivation {
  double rabi = 0.0;       // Omega
  double frequency = 0.0;  // drive frequency
  double theta = 0.0;
  // sigma^y coefficient beta_i(t) of the two-level drive term
  double beta(double t) const;
};

// Capacitive drive phi_i = A sin(w t + theta). With K^-1 in angular
// frequency units the amplitude A carries units of time.
DriveDerivation derive_drive(const CircuitParams& p, double amplitude, double drive_freq, double theta, int target);
// Amplitude giving Rabi frequency `rabi`.
double solve_drive_amplitude(const CircuitParams& p, double rabi, double drive_freq, int target);

struct ModelBridge {
  DeviceModel device;
  std::vector<double> dropped_jx;         // J^x_i removed by the rotating-wave step
  std::vector<double> residual_ratio;     // |J^x_i| / |omega_i - omega_0|
  RealMatrix dropped_jxij;
};

// Ising model with J_{0i} = J^z_i; transverse terms dropped.
ModelBridge gate_model_bridge(const GateParams& g, int n);

struct SynthesisTargets {
  int n_controls = 2;
  bool symmetric = true;
  double jz_min = 2.0 * kPi * 25e6;    // |J^z| bounds, rad/s
  double jz_max = 2.0 * kPi * 320e6;
  double jx_ratio_max = 0.1;           // |J^x_i| / |omega_i - omega_0|
  double alpha_rel_target = -0.02;
  double alpha_rel_tolerance = 0.002;
  double ratio_min = 50.0;             // E^J / E^C
  double ratio_max = 80.0;
  // weights of the squared log-space violations
  double w_jz = 1.0, w_jx = 1.0, w_jxij = 1.0, w_alpha = 1.0, w_ratio = 1.0;
  // log-uniform box for random starts; its upper edges and the capacitance
  // lower edge also bound the search
  double energy_lo = 2.0 * kPi * 0.05e9, energy_hi = 2.0 * kPi * 60e9;
  double cap_lo = 10.0, cap_hi = 400.0;
  double cz_lo = 0.005, cz_hi = 0.5;
  double feasible_cost = 1e-12;
};

double synthesis_cost(const CircuitParams& p, const SynthesisTargets& t);
bool is_feasible(const GateParams& g, const SynthesisTargets& t);

struct SynthesisCandidate {
  CircuitParams params;
  GateParams gate;
  double cost;
  std::size_t seed_index;
};

struct SynthesisResult {
  std::vector<SynthesisCandidate> feasible;
  std::size_t seeds_run = 0;
  double best_cost = 0.0;
  std::string diagnostic;
};

// Nelder-Mead from `seeds` random log-uniform starting points. Deterministic
// for a given rng seed and independent of `threads`.
SynthesisResult optimize_circuit(const SynthesisTargets& targets, int seeds, std::uint64_t rng_seed, int threads = 1);
// Single descent from a given point.
SynthesisCandidate refine_circuit(const CircuitParams& start, const SynthesisTargets& targets);

// One row of the published parameter table, in the units printed there:
// energies 2pi GHz, capacitances fF, J in 2pi MHz, anharmonicities in %.
struct TableRow {
  int id = 0;
  double e0, ei, ez, c0, ci, cz;
  double omega0, omegai, jz, jx, jxij;
  double alpha0, alphai, ratio0, ratioi;
  CircuitParams circuit(int n_controls = 2) const;
};

// Whitespace-separated rows; lines starting with '#' and a single header
// line beginning with "id" are skipped.
std::vector<TableRow> parse_table_rows(std::istream& in);
std::vector<TableRow> load_table_rows(const std::string& path);

}  // namespace ntoffoli

#endif  // NTOFFOLI_CIRCUIT_SYNTH_H_
