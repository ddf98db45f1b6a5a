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

#include "ntoffoli/linalg.h"

#include <cmath>
#include <vector>

#include <Eigen/Eigenvalues>

namespace ntoffoli {

namespace pauli {
Operator identity() { return Operator::Identity(2, 2); }
Operator x() {
  Operator m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}
Operator y() {
  Operator m(2, 2);
  m << 0.0, -kI, kI, 0.0;
  return m;
}
Operator z() {
  Operator m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}
Operator lowering() {
  Operator m = Operator::Zero(2, 2);
  m(0, 1) = 1.0;
  return m;
}
Operator raising() {
  Operator m = Operator::Zero(2, 2);
  m(1, 0) = 1.0;
  return m;
}
}  // namespace pauli

Operator hadamard() {
  Operator m(2, 2);
  const double s = 1.0 / std::sqrt(2.0);
  m << s, s, s, -s;
  return m;
}

bool is_power_of_two(Index n) { return n > 0 && (n & (n - 1)) == 0; }

int qubit_count(const Operator& op) {
  if (op.rows() != op.cols()) throw LinalgError("operator is not square");
  if (!is_power_of_two(op.rows()) || op.rows() < 2) {
    throw LinalgError("operator dimension is not a power of two >= 2");
  }
  int m = 0;
  for (Index d = op.rows(); d > 1; d >>= 1) ++m;
  return m;
}

Operator kron(const Operator& a, const Operator& b) {
  const Index ra = a.rows(), ca = a.cols(), rb = b.rows(), cb = b.cols();
  Operator out(ra * rb, ca * cb);
  for (Index j = 0; j < ca; ++j) {
    for (Index i = 0; i < ra; ++i) {
      out.block(i * rb, j * cb, rb, cb) = a(i, j) * b;
    }
  }
  return out;
}

Operator kron_all(std::span<const Operator> factors) {
  if (factors.empty()) return Operator::Identity(1, 1);
  Operator acc = factors.front();
  for (std::size_t k = 1; k < factors.size(); ++k) acc = kron(acc, factors[k]);
  return acc;
}

Operator embed(const Operator& op, int site, int num_qubits) {
  if (op.rows() != 2 || op.cols() != 2) throw LinalgError("embed expects a 2x2 operator");
  if (num_qubits < 1) throw LinalgError("embed needs at least one qubit");
  if (site < 0 || site >= num_qubits) {
    throw LinalgError("site " + std::to_string(site) + " out of range for " +
                      std::to_string(num_qubits) + " qubits");
  }
  const Index left = Index{1} << site;
  const Index right = Index{1} << (num_qubits - 1 - site);
  return kron(kron(Operator::Identity(left, left), op), Operator::Identity(right, right));
}

double max_abs(const Operator& op) { return op.size() == 0 ? 0.0 : op.cwiseAbs().maxCoeff(); }

double operator_norm(const Operator& op) {
  Eigen::JacobiSVD<Operator> svd(op);
  return svd.singularValues()(0);
}

bool is_hermitian(const Operator& op, double tol) {
  return op.rows() == op.cols() && max_abs(op - op.adjoint()) <= tol;
}

bool is_unitary(const Operator& op, double tol) {
  if (op.rows() != op.cols()) return false;
  return max_abs(op.adjoint() * op - Operator::Identity(op.rows(), op.cols())) <= tol;
}

bool is_diagonal(const Operator& op, double tol) {
  if (op.rows() != op.cols()) return false;
  for (Index j = 0; j < op.cols(); ++j) {
    for (Index i = 0; i < op.rows(); ++i) {
      if (i != j && std::abs(op(i, j)) > tol) return false;
    }
  }
  return true;
}

Operator unitary_exp(const Operator& h, double t) {
  if (h.rows() != h.cols()) throw LinalgError("unitary_exp expects a square matrix");
  const double scale = std::max(1.0, max_abs(h));
  if (!is_hermitian(h, 1e-12 * scale)) throw LinalgError("unitary_exp expects a hermitian matrix");
  if (t == 0.0) return Operator::Identity(h.rows(), h.cols());
  // Symmetrize so the solver sees an exactly hermitian matrix.
  const Operator hs = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<Operator> es(hs);
  if (es.info() != Eigen::Success) throw LinalgError("eigendecomposition failed");
  const RealVector& w = es.eigenvalues();
  Vector phases(w.size());
  for (Index k = 0; k < w.size(); ++k) phases(k) = std::exp(Complex(0.0, -w(k) * t));
  const Operator& v = es.eigenvectors();
  return v * phases.asDiagonal() * v.adjoint();
}

StateVector::StateVector(Vector amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() == 0) throw LinalgError("empty state vector");
  const double n = amplitudes_.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw LinalgError("state vector has zero or invalid norm");
  amplitudes_ /= n;
}

StateVector StateVector::basis(Index dim, Index index) {
  if (index < 0 || index >= dim) throw LinalgError("basis index out of range");
  Vector v = Vector::Zero(dim);
  v(index) = 1.0;
  return StateVector(std::move(v));
}

Complex StateVector::inner(const StateVector& other) const {
  if (other.dim() != dim()) throw LinalgError("dimension mismatch in inner product");
  return amplitudes_.dot(other.amplitudes_);
}

DensityMatrix::DensityMatrix(Operator rho, double tol) : rho_(std::move(rho)) {
  if (rho_.rows() != rho_.cols() || rho_.rows() == 0) throw LinalgError("density matrix must be square");
  if (!is_hermitian(rho_, tol)) throw LinalgError("density matrix is not hermitian");
  if (std::abs(rho_.trace() - 1.0) > tol) throw LinalgError("density matrix trace is not 1");
  Eigen::SelfAdjointEigenSolver<Operator> es(0.5 * (rho_ + rho_.adjoint()), Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-9) throw LinalgError("density matrix has a negative eigenvalue");
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
  return DensityMatrix(psi.amplitudes() * psi.amplitudes().adjoint());
}

double DensityMatrix::purity() const { return (rho_ * rho_).trace().real(); }

double DensityMatrix::fidelity(const StateVector& psi) const {
  if (psi.dim() != dim()) throw LinalgError("dimension mismatch in fidelity");
  return psi.amplitudes().dot(rho_ * psi.amplitudes()).real();
}

Operator reduced_operator(const Operator& rho, std::span<const int> keep) {
  const int m = qubit_count(rho);
  const int k = static_cast<int>(keep.size());
  std::vector<bool> kept(m, false);
  for (int q : keep) {
    if (q < 0 || q >= m || kept[q]) throw LinalgError("invalid qubit list for partial trace");
    kept[q] = true;
  }
  const Index dk = Index{1} << k;
  Operator out = Operator::Zero(dk, dk);
  auto sub_index = [&](Index full) {
    Index s = 0;
    for (int q : keep) s = (s << 1) | bit_of(static_cast<std::uint64_t>(full), q, m);
    return s;
  };
  auto traced_bits = [&](Index full) {
    Index s = 0;
    for (int q = 0; q < m; ++q) {
      if (!kept[q]) s = (s << 1) | bit_of(static_cast<std::uint64_t>(full), q, m);
    }
    return s;
  };
  const Index d = rho.rows();
  for (Index b = 0; b < d; ++b) {
    for (Index a = 0; a < d; ++a) {
      if (traced_bits(a) == traced_bits(b)) out(sub_index(a), sub_index(b)) += rho(a, b);
    }
  }
  return out;
}

}  // namespace ntoffoli
