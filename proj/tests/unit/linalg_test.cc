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

#include <random>

#include <gtest/gtest.h>

#include "ntoffoli/linalg.h"
#include "oracles.h"

namespace ntoffoli {
namespace {

Operator random_operator(Index d, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Operator a(d, d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) a(i, j) = Complex(g(rng), g(rng));
  return a;
}

Operator random_hermitian(Index d, std::mt19937_64& rng) {
  const Operator a = random_operator(d, rng);
  return 0.5 * (a + a.adjoint());
}

TEST(Kron, IdentityTimesIdentity) {
  EXPECT_LT(oracle::max_diff(kron(pauli::identity(), pauli::identity()), Operator::Identity(4, 4)), 1e-15);
}

TEST(Kron, ZZIsDiagonal) {
  Operator expected = Operator::Zero(4, 4);
  expected.diagonal() << 1.0, -1.0, -1.0, 1.0;
  EXPECT_EQ(kron(pauli::z(), pauli::z()), expected);
}

TEST(Kron, XXFlipsBothBits) {
  const Vector out = kron(pauli::x(), pauli::x()) * StateVector::basis(4, 0).amplitudes();
  EXPECT_EQ(out, StateVector::basis(4, 3).amplitudes());
}

TEST(Kron, MatchesEntrywiseOracle) {
  std::mt19937_64 rng(3);
  const Operator a = random_operator(2, rng), b = random_operator(4, rng);
  EXPECT_LT(oracle::max_diff(kron(a, b), oracle::kron(a, b)), 1e-14);
  const Operator c = random_operator(2, rng);
  const Operator parts[] = {a, c, b};
  EXPECT_LT(oracle::max_diff(kron_all(parts), oracle::kron(oracle::kron(a, c), b)), 1e-13);
}

TEST(Embed, SiteZeroIsMostSignificant) {
  // |10> is index 2
  const Vector v = embed(pauli::z(), 0, 2) * StateVector::basis(4, 2).amplitudes();
  EXPECT_EQ(v, -StateVector::basis(4, 2).amplitudes());
  const Vector w = embed(pauli::x(), 1, 2) * StateVector::basis(4, 0).amplitudes();
  EXPECT_EQ(w, StateVector::basis(4, 1).amplitudes());
}

TEST(Embed, IdentityAnywhere) {
  for (int k = 0; k < 4; ++k) EXPECT_EQ(embed(pauli::identity(), k, 4), Operator::Identity(16, 16));
}

TEST(Embed, RejectsBadSite) {
  EXPECT_THROW(embed(pauli::x(), 3, 3), LinalgError);
  EXPECT_THROW(embed(Operator::Identity(4, 4), 0, 3), LinalgError);
}

TEST(UnitaryExp, ZeroTimeIsIdentity) {
  std::mt19937_64 rng(1);
  EXPECT_LT(oracle::max_diff(unitary_exp(random_hermitian(8, rng), 0.0), Operator::Identity(8, 8)), 1e-14);
}

TEST(UnitaryExp, PauliCases) {
  Operator dz = Operator::Zero(2, 2);
  dz(0, 0) = std::exp(-kI * kPi / 2.0);
  dz(1, 1) = std::exp(kI * kPi / 2.0);
  EXPECT_LT(oracle::max_diff(unitary_exp(pauli::z(), kPi / 2), dz), 1e-14);
  EXPECT_LT(oracle::max_diff(unitary_exp(pauli::x(), kPi / 2), -kI * pauli::x()), 1e-14);
}

TEST(UnitaryExp, MatchesPadeOracle) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Operator h = random_hermitian(16, rng);
    EXPECT_LT(oracle::max_diff(unitary_exp(h, 0.37), oracle::expm(h, 0.37)), 1e-11);
  }
}

TEST(UnitaryExp, RejectsNonHermitian) {
  Operator h = pauli::x();
  h(0, 1) = 2.0;
  EXPECT_THROW(unitary_exp(h, 1.0), LinalgError);
}

TEST(Predicates, UnitaryAndHermitian) {
  EXPECT_TRUE(is_unitary(hadamard()));
  EXPECT_TRUE(is_hermitian(pauli::y()));
  EXPECT_FALSE(is_hermitian(pauli::lowering()));
  EXPECT_TRUE(is_diagonal(pauli::z()));
  EXPECT_FALSE(is_diagonal(pauli::x()));
  EXPECT_NEAR(operator_norm(2.0 * pauli::x()), 2.0, 1e-14);
}

TEST(StateVector, NormalizesAndValidates) {
  Vector v(2);
  v << 3.0, 4.0;
  StateVector s(v);
  EXPECT_NEAR(s.amplitudes().norm(), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(s[1]), 0.8, 1e-15);
  EXPECT_THROW(StateVector(Vector::Zero(2)), LinalgError);
}

TEST(DensityMatrix, ValidatesAndComputesFidelity) {
  const StateVector plus(Vector::Ones(2));
  const DensityMatrix rho = DensityMatrix::pure(plus);
  EXPECT_NEAR(rho.purity(), 1.0, 1e-14);
  EXPECT_NEAR(rho.fidelity(plus), 1.0, 1e-14);
  EXPECT_NEAR(rho.fidelity(StateVector::basis(2, 0)), 0.5, 1e-14);
  EXPECT_THROW(DensityMatrix(Operator::Identity(2, 2)), LinalgError);      // trace 2
  EXPECT_THROW(DensityMatrix(pauli::z() * 0.5 + 0.5 * pauli::x()), LinalgError);  // trace 0
  Operator neg = Operator::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  EXPECT_THROW(DensityMatrix{neg}, LinalgError);
}

TEST(ReducedOperator, TracesOutOtherQubits) {
  const Vector a = StateVector::basis(2, 1).amplitudes();
  const Vector b = StateVector(Vector::Ones(2)).amplitudes();
  const Vector ab = oracle::kron(a, b);
  const Operator rho = ab * ab.adjoint();
  const int keep1[] = {1};
  EXPECT_LT(oracle::max_diff(reduced_operator(rho, keep1), b * b.adjoint()), 1e-15);
  const int keep0[] = {0};
  EXPECT_LT(oracle::max_diff(reduced_operator(rho, keep0), a * a.adjoint()), 1e-15);
}

}  // namespace
}  // namespace ntoffoli
