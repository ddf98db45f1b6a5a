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

#ifndef NTOFFOLI_LINALG_H_
#define NTOFFOLI_LINALG_H_

#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace ntoffoli {

using Complex = std::complex<double>;
using Operator = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;
using Index = Eigen::Index;

inline constexpr Complex kI{0.0, 1.0};
inline constexpr double kPi = 3.14159265358979323846;

// Thrown for invalid arguments to numerical routines (dimension mismatch,
// non-hermitian input and so on).
class LinalgError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace pauli {
Operator identity();
Operator x();
Operator y();
Operator z();
// |0><1|. With |1> the excited state this is the relaxation operator.
Operator lowering();
// |1><0|.
Operator raising();
}  // namespace pauli

Operator hadamard();

bool is_power_of_two(Index n);

// Number of qubits m with 2^m == op.rows(); throws for non-square or
// non power-of-two operators.
int qubit_count(const Operator& op);

// Bit of qubit `q` in basis index `index` on an `m`-qubit register.
// Qubit 0 is the most significant bit.
inline int bit_of(std::uint64_t index, int q, int m) {
  return static_cast<int>((index >> (m - 1 - q)) & 1u);
}
inline std::uint64_t qubit_mask(int q, int m) {
  return std::uint64_t{1} << (m - 1 - q);
}

// Kronecker product with `a` as the slow index. Entry (i*rb+k, j*cb+l) is
// computed as the single product a(i,j)*b(k,l), so chained products agree
// with either bracketing up to one rounding per complex multiply.
Operator kron(const Operator& a, const Operator& b);
Operator kron_all(std::span<const Operator> factors);

// I x ... x op x ... x I with `op` (2x2) acting on `site`.
Operator embed(const Operator& op, int site, int num_qubits);

// exp(-i h t) for hermitian h, via eigendecomposition.
Operator unitary_exp(const Operator& h, double t);

double max_abs(const Operator& op);
double operator_norm(const Operator& op);
bool is_hermitian(const Operator& op, double tol = 1e-12);
bool is_unitary(const Operator& op, double tol = 1e-10);
bool is_diagonal(const Operator& op, double tol = 0.0);

// Pure state with unit norm. Construction normalizes.
class StateVector {
 public:
  explicit StateVector(Vector amplitudes);
  static StateVector basis(Index dim, Index index);

  const Vector& amplitudes() const { return amplitudes_; }
  Index dim() const { return amplitudes_.size(); }
  Complex operator[](Index i) const { return amplitudes_(i); }
  Complex inner(const StateVector& other) const;

 private:
  Vector amplitudes_;
};

// Hermitian, unit-trace, positive semidefinite operator.
class DensityMatrix {
 public:
  explicit DensityMatrix(Operator rho, double tol = 1e-10);
  static DensityMatrix pure(const StateVector& psi);

  const Operator& matrix() const { return rho_; }
  Index dim() const { return rho_.rows(); }
  double purity() const;
  // <psi|rho|psi>
  double fidelity(const StateVector& psi) const;

 private:
  Operator rho_;
};

// Partial trace keeping the listed qubits (in the order given).
Operator reduced_operator(const Operator& rho, std::span<const int> keep);

}  // namespace ntoffoli

#endif  // NTOFFOLI_LINALG_H_
