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

#ifndef NTOFFOLI_MODEL_H_
#define NTOFFOLI_MODEL_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ntoffoli/linalg.h"

namespace ntoffoli {

// Ising-coupled register. Qubit 0 is the target of the i-Toffoli protocol,
// qubits 1..n are its controls. Frequencies are angular (rad/s).
class DeviceModel {
 public:
  static constexpr int kDefaultMaxControls = 7;

  DeviceModel(std::vector<double> omega, RealMatrix couplings,
              int max_controls = kDefaultMaxControls);

  // Star device: J_{0k} = coupling for k = 1..n, no control-control terms.
  static DeviceModel star(int n_controls, double coupling, std::vector<double> omega = {});

  int num_qubits() const { return static_cast<int>(omega_.size()); }
  int n_controls() const { return num_qubits() - 1; }
  Index dim() const { return Index{1} << num_qubits(); }
  double omega(int j) const { return omega_.at(j); }
  const std::vector<double>& omegas() const { return omega_; }
  double coupling(int j, int k) const { return couplings_(j, k); }
  const RealMatrix& couplings() const { return couplings_; }

 private:
  std::vector<double> omega_;
  RealMatrix couplings_;
};

enum class Quadrature { kTwo, kOne };

struct DriveTone {
  int qubit = 0;
  double detuning = 0.0;  // Delta_j, rad/s
  double phase = 0.0;     // theta_j, rad
};

// Drive fields on a set of qubits sharing one Rabi frequency. Tone j is
// Omega[cos(phi) sx + sin(phi) sy] with phi = (Delta_j - omega_j) t + theta_j;
// one-quadrature mode drops the sy part.
class DriveSpec {
 public:
  DriveSpec(double rabi, std::vector<DriveTone> tones, Quadrature quadrature = Quadrature::kTwo);

  double rabi() const { return rabi_; }
  Quadrature quadrature() const { return quadrature_; }
  const std::vector<DriveTone>& tones() const { return tones_; }
  bool drives(int qubit) const;
  const DriveTone& tone(int qubit) const;

 private:
  double rabi_;
  std::vector<DriveTone> tones_;
  Quadrature quadrature_;
};

// Control string x of an n-control register. Control j (1-based) is the
// (j-1)-th most significant of the n bits, matching the global basis order.
class SubspaceLabel {
 public:
  SubspaceLabel(std::uint64_t bits, int n);
  static SubspaceLabel from_string(std::string_view s);

  std::uint64_t bits() const { return bits_; }
  int size() const { return n_; }
  int bit(int control) const;  // control in 1..n
  int hamming() const { return hamming_; }
  SubspaceLabel complement() const;

 private:
  std::uint64_t bits_;
  int n_;
  int hamming_;
};

// Diagonal of H_0 + H_Ising in the computational basis.
RealVector static_energies(const DeviceModel& dev);
Operator static_hamiltonian(const DeviceModel& dev);
Operator drive_hamiltonian(const DeviceModel& dev, const DriveSpec& drive, double t);

// Gap of the target in subspace x: sum_j J_{j0} (-1)^{x_j}.
double subspace_gap(const DeviceModel& dev, const SubspaceLabel& x);

// Detuning that puts `qubit` on resonance when the qubits in `ones` are |1>
// and every other qubit is |0>.
double resonant_detuning(const DeviceModel& dev, int qubit, const std::vector<int>& ones);

// Uniform-coupling detuning of Hamming-weight-q subspace when the all-ones
// subspace is resonant: J (n - q). Equal to (Delta_x - Delta_0)/2.
double uniform_detuning(int n, double coupling, int q);

// i-Toffoli drive on qubit 0, resonant with the all-ones control string.
DriveSpec itoffoli_drive(const DeviceModel& dev, double rabi, double theta = 0.0,
                         Quadrature quadrature = Quadrature::kTwo);
// Same, on an arbitrary target whose neighbours all act as controls.
DriveSpec toffoli_drive(const DeviceModel& dev, int target, double rabi, double theta = 0.0);
// CNOT^n drive: every target resonant when `control` is |1>.
DriveSpec fanout_drive(const DeviceModel& dev, int control, const std::vector<int>& targets,
                       double rabi, const std::vector<double>& thetas = {});

// 2x2 rotating-frame Hamiltonian of subspace x:
// delta_x sz + Omega (cos(theta) sx + sin(theta) sy), delta_x = (Delta_x - Delta_0)/2.
Operator interaction_hamiltonian(const DeviceModel& dev, const DriveSpec& drive,
                                 const SubspaceLabel& x);

// Diagonal generator G of the rotating frame, U_int(t) = exp(iGt):
// sum over driven j of (Delta_j - omega_j) sz_j / 2, plus the mean static
// energy over driven-bit configurations for each undriven configuration.
// For a single drive on qubit 0 this is H_0 + Delta_0 sz_0/2 + sum Ebar_x |x><x|
// with the control part of H_0 already contained in Ebar_x.
Operator interaction_frame_generator(const DeviceModel& dev, const DriveSpec& drive);

// exp(iGt) (H(t)) exp(-iGt) - G. Constant in t for two-quadrature drives.
Operator rotating_frame_hamiltonian(const DeviceModel& dev, const DriveSpec& drive, double t = 0.0);

// Warning sink for regime checks; defaults to stderr, restored by passing nullptr.
using WarningHandler = std::function<void(std::string_view)>;
void set_warning_handler(WarningHandler handler);
void emit_warning(std::string_view message);

// One-quadrature drives are exact only under the rotating-wave approximation.
// Returns a message (and emits it) when Omega exceeds a tenth of the
// smallest of |Delta_x|, |Delta_0| and omega_0.
std::optional<std::string> check_rwa(const DeviceModel& dev, const DriveSpec& drive);

}  // namespace ntoffoli

#endif  // NTOFFOLI_MODEL_H_
