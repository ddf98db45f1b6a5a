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

#ifndef NTOFFOLI_EVOLUTION_H_
#define NTOFFOLI_EVOLUTION_H_

#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "ntoffoli/linalg.h"
#include "ntoffoli/model.h"
#include "ntoffoli/ode.h"

namespace ntoffoli {

class SimulationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NoRecurrenceError : public SimulationError {
 public:
  using SimulationError::SimulationError;
};

// Per-qubit T1 and T2 in seconds. Infinite times switch the channel off.
class NoiseSpec {
 public:
  NoiseSpec(std::vector<double> t1, std::vector<double> t2);
  static NoiseSpec uniform(int num_qubits, double t1, double t2);
  static NoiseSpec none(int num_qubits);

  int num_qubits() const { return static_cast<int>(t1_.size()); }
  double t1(int q) const { return t1_.at(q); }
  double t2(int q) const { return t2_.at(q); }
  double relaxation_rate(int q) const;  // 1/T1
  // gamma_phi = 1/T2 - 1/(2 T1); collapse operator sqrt(gamma_phi/2) sz.
  double dephasing_rate(int q) const;
  bool is_noiseless() const;
  // Dense collapse operators, relaxation first then dephasing, zero-rate ones skipped.
  std::vector<Operator> collapse_operators() const;

 private:
  std::vector<double> t1_;
  std::vector<double> t2_;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<DensityMatrix> states;
};

using HamiltonianSource = std::function<Operator(double)>;

// 1 cos(vt) - i (sigma.v / v) sin(vt), v = (Omega cos(theta), Omega sin(theta), delta).
Operator analytic_subspace_propagator(double delta, double rabi, double theta, double t);

// Rotating-frame propagator. A two-quadrature drive on qubit 0 is assembled
// block by block from the closed form; other two-quadrature drives use the
// exact exponential of the static frame Hamiltonian; one-quadrature drives
// are integrated numerically.
Operator driven_propagator(const DeviceModel& dev, const DriveSpec& drive, double t);

// exp(-iGt) driven_propagator(t).
// exp(i D t) U_I(t) with D = diag(E - G): the rotating-frame gate with the
// static frame phases removed, the object compared against ideal gates.
Operator frame_corrected_propagator(const DeviceModel& dev, const DriveSpec& drive, double t);
Operator lab_frame_propagator(const DeviceModel& dev, const DriveSpec& drive, double t);

// Time-ordered exp(-i int H) from t0 to t1 by adaptive integration.
Operator time_ordered_propagator(const HamiltonianSource& h, double t0, double t1,
                                 const OdeOptions& options = {1e-10, 1e-12});

// Smallest T > 0 with exp(-i H_Ising T) proportional to identity.
// Returns 0 when H_Ising is a multiple of identity.
double phase_recurrence_time(const DeviceModel& dev);

// exp(+iGt) x exp(-iGt) for diagonal G.
Operator rotate_result(const Operator& x, const Operator& generator, double t);
DensityMatrix rotate_result(const DensityMatrix& rho, const Operator& generator, double t);

// Right-hand side of the master equation split into a diagonal energy part,
// single-qubit Hamiltonian terms and the per-qubit noise. Applying it costs
// O(d^2) per term instead of a dense product.
class StructuredGenerator {
 public:
  struct LocalTerm {
    int qubit;
    Operator op;                              // 2x2, used when coefficient is empty
    std::function<Operator(double)> varying;  // optional time-dependent 2x2
  };

  StructuredGenerator(RealVector diagonal, std::vector<LocalTerm> terms, NoiseSpec noise);

  // Rotating frame of (dev, drive): diag(E - G) plus the drive terms.
  static StructuredGenerator rotating_frame(const DeviceModel& dev, const DriveSpec& drive,
                                            const NoiseSpec& noise);

  int num_qubits() const { return m_; }
  Index dim() const { return diagonal_.size(); }
  const RealVector& diagonal() const { return diagonal_; }
  const std::vector<LocalTerm>& terms() const { return terms_; }
  const NoiseSpec& noise() const { return noise_; }
  bool is_time_dependent() const;
  // Elementwise part of L: -i(h_a - h_b) minus the decay rates of (a, b).
  const Operator& multiplier() const { return multiplier_; }

  // out = L_t(x)
  void apply(double t, const Operator& x, Operator& out) const;
  // Hamiltonian at time t as a dense matrix.
  Operator hamiltonian(double t) const;

 private:
  RealVector diagonal_;
  std::vector<LocalTerm> terms_;
  NoiseSpec noise_;
  int m_;
  Operator multiplier_;  // elementwise diagonal part of L
};

struct LindbladOptions {
  OdeOptions ode{1e-9, 1e-12};
  double state_tolerance = 1e-7;
};

// Integrates the master equation with samples >= 2 equally spaced instants
// including 0 and t_end.
Trajectory lindblad_evolve(const HamiltonianSource& hamiltonian, const NoiseSpec& noise,
                           const DensityMatrix& rho0, double t_end, int samples,
                           const LindbladOptions& options = {});
Trajectory lindblad_evolve(const StructuredGenerator& generator, const DensityMatrix& rho0,
                           double t_end, int samples, const LindbladOptions& options = {});

// Evolves an arbitrary (not necessarily physical) operator; the map is linear.
Operator evolve_operator(const StructuredGenerator& generator, const Operator& x, double t0,
                         double t1, const OdeOptions& options = {1e-9, 1e-12});

}  // namespace ntoffoli

#endif  // NTOFFOLI_EVOLUTION_H_
