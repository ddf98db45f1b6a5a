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

#include "ntoffoli/evolution.h"
#include "ntoffoli/fidelity.h"
#include "ntoffoli/gates.h"
#include "oracles.h"

namespace ntoffoli {
namespace {

// Subspace propagator at T = pi/(2 Omega) with Omega = 1 and detuning gamma,
// against free evolution at the same detuning.
double brute_subspace_fidelity(double gamma) {
  const double t = kPi / 2;
  const Operator uq = oracle::expm(gamma * pauli::z() + pauli::x(), t);
  const Operator goal = oracle::expm(gamma * pauli::z(), t);
  return 0.5 * std::abs((uq * goal.adjoint()).trace());
}

TEST(SubspaceTraceFidelity, FormulaValues) {
  EXPECT_NEAR(subspace_trace_fidelity(0.0), 0.0, 1e-16);
  EXPECT_NEAR(subspace_trace_fidelity(8.0), brute_subspace_fidelity(8.0), 1e-12);
  EXPECT_GE((1.0 - subspace_trace_fidelity(8.0)) / (1.0 - subspace_trace_fidelity(16.0)), 3.5);
}

TEST(WeightedTraceFidelity, Limits) {
  EXPECT_NEAR(weighted_trace_fidelity(1, 1e6), 1.0, 1e-9);
  EXPECT_GT(weighted_trace_fidelity(4, 8.0), weighted_trace_fidelity(2, 8.0));
  EXPECT_THROW(weighted_trace_fidelity(0, 8.0), std::invalid_argument);
}

TEST(WeightedTraceFidelity, MatchesBlockOracle) {
  const int n = 2;
  const double ratio = 8.0, rabi = 1.0, jc = ratio * rabi, t = kPi / (2 * rabi);
  double sum = 0.0;
  for (int x = 0; x < 4; ++x) {
    const int q = __builtin_popcount(static_cast<unsigned>(x));
    const double delta = jc * (n - q);
    const Operator u = oracle::expm(delta * pauli::z() + rabi * pauli::x(), t);
    const Operator goal = q == n ? Operator(-kI * pauli::x()) : oracle::expm(delta * pauli::z(), t);
    sum += std::abs((u * goal.adjoint()).trace());
  }
  EXPECT_NEAR(weighted_trace_fidelity(n, ratio), sum / 8.0, 1e-12);
}

TEST(ProcessFidelityFromTrace, Endpoints) {
  EXPECT_NEAR(process_fidelity_from_trace(1.0, 16), 1.0, 1e-15);
  EXPECT_NEAR(process_fidelity_from_trace(0.0, 8), 1.0 / 9.0, 1e-15);
}

TEST(ProcessFidelity, PipelineMatchesPropagator) {
  const DeviceModel dev = DeviceModel::star(2, 1.0);
  const double rabi = 1.0 / 8.0;
  const double closed = process_fidelity_from_trace(weighted_trace_fidelity(2, 8.0), 8);
  const double sim = driven_gate_fidelity(dev, itoffoli_drive(dev, rabi), ideal_itoffoli(2), kPi / (2 * rabi));
  EXPECT_NEAR(closed, sim, 1e-3);
}

Operator random_unitary(Index d, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Operator a(d, d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) a(i, j) = Complex(g(rng), g(rng));
  Eigen::HouseholderQR<Operator> qr(a);
  return qr.householderQ();
}

TEST(ProcessFidelity, ChannelOfGoalIsOne) {
  const Operator goal = ideal_itoffoli(2);
  EXPECT_NEAR(process_fidelity_channel(Channel::unitary(goal), goal), 1.0, 1e-14);
  EXPECT_NEAR(process_fidelity_channel(Channel::unitary(std::exp(kI * 0.7) * goal), goal), 1.0, 1e-14);
  const Channel conj = Channel::from_map(8, [&](const Operator& x) -> Operator { return goal * x * goal.adjoint(); });
  EXPECT_NEAR(process_fidelity_channel(conj, goal), 1.0, 1e-14);
}

TEST(ProcessFidelity, ChannelAgreesWithTraceRelation) {
  std::mt19937_64 rng(8);
  for (Index d : {2, 4, 8}) {
    const Operator u = random_unitary(d, rng), goal = random_unitary(d, rng);
    const double via_trace = (std::norm((u.adjoint() * goal).trace()) + d) / (d * (d + 1.0));
    const Channel c = Channel::from_map(d, [&](const Operator& x) -> Operator { return u * x * u.adjoint(); });
    EXPECT_NEAR(process_fidelity_channel(c, goal), via_trace, 1e-12);
    EXPECT_NEAR(process_fidelity_unitary(u, goal), via_trace, 1e-12);
  }
}

TEST(ProcessFidelity, DepolarizingQubitIsHalf) {
  const Channel dep = Channel::from_map(2, [](const Operator& x) -> Operator {
    return x.trace() * 0.5 * Operator::Identity(2, 2);
  });
  EXPECT_DOUBLE_EQ(process_fidelity_channel(dep, Operator::Identity(2, 2)), 0.5);
  const MonteCarloEstimate mc = process_fidelity_monte_carlo(dep, Operator::Identity(2, 2), 4000, 3);
  EXPECT_NEAR(mc.mean, 0.5, 1e-12);
}

TEST(ProcessFidelity, RejectsTracelosingChannel) {
  const Channel lossy = Channel::from_map(2, [](const Operator& x) -> Operator { return 0.5 * x; });
  EXPECT_THROW(process_fidelity_channel(lossy, Operator::Identity(2, 2)), std::invalid_argument);
}

TEST(MonteCarlo, AgreesWithExactWithinThreeSigma) {
  const DeviceModel dev = DeviceModel::star(1, 1.0);
  const auto gen = StructuredGenerator::rotating_frame(dev, itoffoli_drive(dev, 0.25), NoiseSpec::uniform(2, 20.0, 20.0));
  const double t = kPi / 0.5;
  const Operator d = gen.diagonal().cast<Complex>().asDiagonal();
  const Channel c = Channel::from_generator(gen, t).rotated(d, t);
  const double exact = process_fidelity_channel(c, ideal_itoffoli(1));
  const MonteCarloEstimate mc = process_fidelity_monte_carlo(c, ideal_itoffoli(1), 5000, 11);
  EXPECT_LT(std::abs(mc.mean - exact), 3.0 * mc.std_error);
  EXPECT_GT(mc.std_error, 0.0);
}

TEST(MonteCarlo, IndependentOfThreadCount) {
  const Operator goal = ideal_itoffoli(1);
  const Channel c = Channel::unitary(ideal_itoffoli(1, 0.1));
  const auto a = process_fidelity_monte_carlo(c, goal, 3000, 5, 1);
  const auto b = process_fidelity_monte_carlo(c, goal, 3000, 5, 3);
  EXPECT_EQ(a.mean, b.mean);
  EXPECT_EQ(a.std_error, b.std_error);
}

TEST(OperatorNorm, DecreasesWithRatio) { EXPECT_LT(operator_norm_error(32.0), operator_norm_error(8.0)); }

TEST(OperatorNorm, WorstSubspaceIsNextToResonant) {
  for (int n = 2; n <= 6; ++n) {
    double worst = 0.0;
    int arg = -1;
    for (int q = 0; q < n; ++q) {
      const double v = per_subspace_norm(8.0 * (n - q));
      if (v > worst) {
        worst = v;
        arg = q;
      }
    }
    EXPECT_EQ(arg, n - 1);
    EXPECT_NEAR(max_subspace_norm(n, 8.0), max_subspace_norm(2, 8.0), 1e-12);
  }
}

TEST(OperatorNorm, MatchesSvdOfExplicitDifference) {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> u(0.1, 40.0), ph(0.0, 6.28);
  for (int k = 0; k < 100; ++k) {
    const double gamma = u(rng), theta = ph(rng);
    const double t = kPi / 2;
    const Operator drive = std::cos(theta) * pauli::x() + std::sin(theta) * pauli::y();
    const Operator diff = oracle::expm(gamma * pauli::z() + drive, t) - oracle::expm(gamma * pauli::z(), t);
    const double svd = Eigen::JacobiSVD<Operator>(diff).singularValues()(0);
    EXPECT_NEAR(per_subspace_norm(gamma, theta), svd, 1e-12);
    EXPECT_NEAR(per_subspace_norm_squared_closed_form(gamma), svd * svd, 1e-12);
  }
}

TEST(Report, ConsistentFields) {
  const FidelityReport r = itoffoli_report(3, 8.0);
  EXPECT_NEAR(r.trace_fidelity, weighted_trace_fidelity(3, 8.0), 1e-15);
  EXPECT_EQ(r.per_subspace.size(), 4u);
  EXPECT_DOUBLE_EQ(r.per_subspace.at(3), 1.0);
  EXPECT_NEAR(r.operator_norm_error, operator_norm_error(8.0), 1e-12);
}

}  // namespace
}  // namespace ntoffoli
