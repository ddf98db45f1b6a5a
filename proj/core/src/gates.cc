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

#include "ntoffoli/gates.h"

#include <cmath>
#include <stdexcept>

namespace ntoffoli {

namespace {

void check_register(int num_qubits, int q) {
  if (q < 0 || q >= num_qubits) throw std::invalid_argument("qubit index out of range");
}

Complex minus_i_pow(int n) {
  static const Complex table[4] = {1.0, -kI, -1.0, kI};
  return table[((n % 4) + 4) % 4];
}

}  // namespace

Operator inversion_block(double theta) {
  return -kI * (std::cos(theta) * pauli::x() + std::sin(theta) * pauli::y());
}

Operator itoffoli_on(int num_qubits, int target, const std::vector<int>& controls, double theta) {
  check_register(num_qubits, target);
  std::uint64_t cmask = 0;
  for (int c : controls) {
    check_register(num_qubits, c);
    if (c == target) throw std::invalid_argument("target listed as control");
    cmask |= qubit_mask(c, num_qubits);
  }
  const Index d = Index{1} << num_qubits;
  const std::uint64_t tmask = qubit_mask(target, num_qubits);
  const Operator blk = inversion_block(theta);
  Operator u = Operator::Identity(d, d);
  for (Index a = 0; a < d; ++a) {
    const auto ua = static_cast<std::uint64_t>(a);
    if ((ua & cmask) != cmask || (ua & tmask)) continue;
    const auto b = static_cast<Index>(ua | tmask);
    u(a, a) = blk(0, 0);
    u(a, b) = blk(0, 1);
    u(b, a) = blk(1, 0);
    u(b, b) = blk(1, 1);
  }
  return u;
}

Operator ideal_itoffoli(int n, double theta) {
  if (n < 1) throw std::invalid_argument("i-Toffoli needs at least one control");
  std::vector<int> controls;
  for (int j = 1; j <= n; ++j) controls.push_back(j);
  return itoffoli_on(n + 1, 0, controls, theta);
}

Operator cnotn_on(int num_qubits, int control, const std::vector<int>& targets, const std::vector<double>& thetas) {
  check_register(num_qubits, control);
  if (targets.empty()) throw std::invalid_argument("fanout needs at least one target");
  if (!thetas.empty() && thetas.size() != targets.size()) throw std::invalid_argument("one phase per target expected");
  Operator flip = Operator::Identity(Index{1} << num_qubits, Index{1} << num_qubits);
  for (std::size_t k = 0; k < targets.size(); ++k) {
    check_register(num_qubits, targets[k]);
    if (targets[k] == control) throw std::invalid_argument("control listed as target");
    const double th = thetas.empty() ? 0.0 : thetas[k];
    flip = embed(std::cos(th) * pauli::x() + std::sin(th) * pauli::y(), targets[k], num_qubits) * flip;
  }
  const Operator p0 = embed((pauli::identity() + pauli::z()) / 2.0, control, num_qubits);
  const Operator p1 = embed((pauli::identity() - pauli::z()) / 2.0, control, num_qubits);
  return p0 + minus_i_pow(static_cast<int>(targets.size())) * p1 * flip;
}

Operator ideal_cnotn(int n, const std::vector<double>& thetas) {
  if (n < 1) throw std::invalid_argument("CNOT^n needs at least one target");
  std::vector<int> targets;
  for (int j = 1; j <= n; ++j) targets.push_back(j);
  return cnotn_on(n + 1, 0, targets, thetas);
}

Operator fanout_phase_correction(int n) {
  Operator p = Operator::Identity(2, 2);
  p(1, 1) = std::conj(minus_i_pow(n));
  return p;
}

Operator multi_controlled_x(int num_qubits, const std::vector<int>& controls, int target) {
  check_register(num_qubits, target);
  std::uint64_t cmask = 0;
  for (int c : controls) {
    check_register(num_qubits, c);
    cmask |= qubit_mask(c, num_qubits);
  }
  const Index d = Index{1} << num_qubits;
  const std::uint64_t tmask = qubit_mask(target, num_qubits);
  Operator u = Operator::Zero(d, d);
  for (Index a = 0; a < d; ++a) {
    const auto ua = static_cast<std::uint64_t>(a);
    const auto out = (ua & cmask) == cmask ? static_cast<Index>(ua ^ tmask) : a;
    u(out, a) = 1.0;
  }
  return u;
}

Operator barenco(double delta1, double rabi, double theta, double t) {
  Operator u = Operator::Identity(4, 4);
  const Complex ph = std::exp(kI * delta1 * t);
  const double c = std::cos(rabi * t), s = std::sin(rabi * t);
  // basis |00>,|01>,|10>,|11>; the block acts on indices 1 and 3
  u(1, 1) = ph * c;
  u(3, 3) = ph * c;
  u(1, 3) = -kI * ph * std::exp(Complex(0.0, -theta)) * s;
  u(3, 1) = -kI * ph * std::exp(Complex(0.0, theta)) * s;
  return u;
}

ToffoliComposite toffoli_composite(int n, int promoted) {
  if (n < 2) throw std::invalid_argument("the composite needs at least two controls");
  if (promoted < 1 || promoted > n) throw std::invalid_argument("promoted qubit must be a control");
  const int m = n + 1;
  const Operator it = ideal_itoffoli(n);
  const Operator h = embed(hadamard(), promoted, m);
  ToffoliComposite out;
  out.full = h * it * it * h;
  const Index half = Index{1} << n;
  out.restricted = out.full.topLeftCorner(half, half);
  out.ancilla_returns = max_abs(out.full.bottomLeftCorner(half, half)) < 1e-12;
  return out;
}

}  // namespace ntoffoli
