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

#ifndef NTOFFOLI_GATES_H_
#define NTOFFOLI_GATES_H_

#include <vector>

#include "ntoffoli/linalg.h"

namespace ntoffoli {

enum class GateKind { kIToffoli, kCnotN, kBarenco, kToffoliComposite };

struct GateLabel {
  GateKind kind;
  int n;
  std::vector<double> theta;
};

// -i(cos(theta) sx + sin(theta) sy)
Operator inversion_block(double theta);

// Identity except on controls = 1...1, where the target (qubit 0) block is
// inversion_block(theta). Register: target then n controls.
Operator ideal_itoffoli(int n, double theta = 0.0);

// |0><0| x I + (-i)^n |1><1| x (x)_j (cos(theta_j) sx + sin(theta_j) sy).
// Register: control (qubit 0) then n targets.
Operator ideal_cnotn(int n, const std::vector<double>& thetas = {});

// The same gates on an arbitrary register layout.
Operator itoffoli_on(int num_qubits, int target, const std::vector<int>& controls, double theta = 0.0);
Operator cnotn_on(int num_qubits, int control, const std::vector<int>& targets,
                  const std::vector<double>& thetas = {});

// diag(1, i^n) on the control of a CNOT^n.
Operator fanout_phase_correction(int n);

// Plain multi-controlled X.
Operator multi_controlled_x(int num_qubits, const std::vector<int>& controls, int target);

// Two-qubit Barenco-family matrix: identity on {|00>, |10>}; on {|01>, |11>}
// e^{i delta1 t} [[cos, -i e^{-i theta} sin], [-i e^{i theta} sin, cos]](Omega t).
Operator barenco(double delta1, double rabi, double theta, double t);

struct ToffoliComposite {
  Operator full;        // H_a (i-Toffoli)^2 H_a on n+1 qubits
  Operator restricted;  // <0|_0 full |0>_0 on the n remaining qubits
  bool ancilla_returns;  // ancilla ends in |0> for every basis input
};

// Two i-Toffolis between Hadamards on control `promoted` (1..n) give an
// (n-1)-controlled X on that qubit when the former target starts in |0>.
ToffoliComposite toffoli_composite(int n, int promoted = 1);

}  // namespace ntoffoli

#endif  // NTOFFOLI_GATES_H_
