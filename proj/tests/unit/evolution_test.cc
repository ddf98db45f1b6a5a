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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "ntoffoli/channel.h"
#include "ntoffoli/evolution.h"
#include "oracles.h"

namespace ntoffoli {
namespace {

Operator subspace_matrix(double delta, double rabi, double theta) {
  return delta * pauli::z() + rabi * (std::cos(theta) * pauli::x() + std::sin(theta) * pauli::y());
}

TEST(AnalyticPropagator, PerfectInversion) {
  const double rabi = 0.37;
  EXPECT_LT(oracle::max_diff(analytic_subspace_propagator(0.0, rabi, 0.0, kPi / (2 * rabi)), -kI * pauli::x()),
            1e-14);
}

TEST(AnalyticPropagator, WeakDriveLimit) {
  const double delta = 1.3, t = 2.1;
  EXPECT_LT(oracle::max_diff(analytic_subspace_propagator(delta, 1e-12, 0.4, t), oracle::expm(pauli::z(), delta * t)),
            1e-11);
}

TEST(AnalyticPropagator, MatchesPadeOracle) {
  const double rabi = 0.8, delta = rabi, theta = kPi / 3, t = 0.7 / rabi;
  EXPECT_LT(oracle::max_diff(analytic_subspace_propagator(delta, rabi, theta, t),
                             oracle::expm(subspace_matrix(delta, rabi, theta), t)),
            1e-13);
}

TEST(AnalyticPropagator, SmallArgumentSeries) {
  for (double t : {1e-9, 1e-6, 1e-4}) {
    EXPECT_LT(oracle::max_diff(analytic_subspace_propagator(0.3, 0.2, 1.0, t),
                               oracle::expm(subspace_matrix(0.3, 0.2, 1.0), t)),
              1e-15);
  }
}

TEST(DrivenPropagator, ZeroTimeIsIdentity) {
  const DeviceModel dev = DeviceModel::star(2, 1.0);
  EXPECT_LT(oracle::max_diff(driven_propagator(dev, itoffoli_drive(dev, 0.1), 0.0), Operator::Identity(8, 8)),
            1e-15);
}

TEST(DrivenPropagator, ResonantBlockAndRabiFormula) {
  const double jc = 1.0, rabi = jc / 8.0, t = kPi / (2 * rabi);
  const DeviceModel dev = DeviceModel::star(2, jc);
  const Operator u = driven_propagator(dev, itoffoli_drive(dev, rabi), t);
  Operator block(2, 2);
  block << u(3, 3), u(3, 7), u(7, 3), u(7, 7);
  EXPECT_LT(oracle::max_diff(block, -kI * pauli::x()), 1e-13);
  for (Index x = 0; x < 3; ++x) {
    const int q = static_cast<int>(x == 0 ? 0 : (x == 3 ? 2 : 1));
    const double delta = jc * (2 - q);
    const double v = std::hypot(delta, rabi);
    const double expected = rabi * rabi / (v * v) * std::pow(std::sin(v * t), 2);
    EXPECT_NEAR(std::norm(u(x + 4, x)), expected, 1e-13);
  }
}

TEST(DrivenPropagator, MatchesLabFrameIntegration) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.5, 1.5);
  for (int trial = 0; trial < 3; ++trial) {
    RealMatrix j = RealMatrix::Zero(3, 3);
    j(0, 1) = j(1, 0) = u(rng);
    j(0, 2) = j(2, 0) = u(rng);
    const DeviceModel dev({4.0 * u(rng), u(rng), u(rng)}, j);
    const DriveSpec drive = itoffoli_drive(dev, 0.15 * u(rng), u(rng));
    const double t = 3.0;
    auto lab = [&](double s) -> Operator { return static_hamiltonian(dev) + drive_hamiltonian(dev, drive, s); };
    const Operator u_lab = oracle::rk4_propagator(lab, t, 20000);
    const Operator g = interaction_frame_generator(dev, drive);
    const Operator expected = oracle::expm(-g, t) * u_lab;
    EXPECT_LT(oracle::max_diff(driven_propagator(dev, drive, t), expected), 1e-8);
    EXPECT_LT(oracle::max_diff(lab_frame_propagator(dev, drive, t), u_lab), 1e-8);
  }
}

TEST(DrivenPropagator, OneQuadratureUsesTimeOrdering) {
  // Weak one-quadrature drive: close to the two-quadrature result.
  const DeviceModel dev = DeviceModel::star(1, 20.0, {60.0, 0.0});
  const double rabi = 0.5, t = kPi / (2 * rabi);
  const DriveSpec two = itoffoli_drive(dev, rabi);
  const DriveSpec one = itoffoli_drive(dev, 2.0 * rabi, 0.0, Quadrature::kOne);
  const Operator a = driven_propagator(dev, two, t), b = driven_propagator(dev, one, t);
  EXPECT_TRUE(is_unitary(b, 1e-8));
  EXPECT_LT(oracle::max_diff(a, b), 0.1);
}

TEST(LabFrame, TrivialFrameEqualsRotatingFrame) {
  const DeviceModel dev = DeviceModel::star(2, 0.0);
  const DriveSpec drive(0.2, {DriveTone{0, 0.0, 0.3}});
  EXPECT_LT(oracle::max_diff(lab_frame_propagator(dev, drive, 1.7), driven_propagator(dev, drive, 1.7)), 1e-14);
}

TEST(LabFrame, EqualsRotatingFrameAtRecurrence) {
  for (int n : {2, 3}) {
    const DeviceModel dev = DeviceModel::star(n, 1.0);
    const DriveSpec drive = itoffoli_drive(dev, 0.1);
    const double t = phase_recurrence_time(dev);
    EXPECT_LT(oracle::phase_free_diff(lab_frame_propagator(dev, drive, t), driven_propagator(dev, drive, t)),
              1e-10);
  }
}

TEST(PhaseRecurrence, SinglePair) {
  const DeviceModel dev = DeviceModel::star(1, 2.5);
  EXPECT_NEAR(phase_recurrence_time(dev), 2 * kPi / 2.5, 1e-12);
}

void expect_recurs(const DeviceModel& dev) {
  DeviceModel ising(std::vector<double>(dev.num_qubits(), 0.0), dev.couplings());
  const double t = phase_recurrence_time(dev);
  ASSERT_GT(t, 0.0);
  const Operator u = oracle::expm(static_hamiltonian(ising), t);
  EXPECT_LT(oracle::phase_free_diff(u, Operator::Identity(u.rows(), u.cols())), 1e-10);
}

TEST(PhaseRecurrence, UniformStarAndCommensurate) {
  expect_recurs(DeviceModel::star(2, 1.3));
  expect_recurs(DeviceModel::star(3, 0.7));
  RealMatrix j = RealMatrix::Zero(3, 3);
  j(0, 1) = j(1, 0) = 1.1;
  j(0, 2) = j(2, 0) = 2.2;
  expect_recurs(DeviceModel({0.0, 0.0, 0.0}, j));
}

TEST(PhaseRecurrence, IncommensurateThrows) {
  RealMatrix j = RealMatrix::Zero(3, 3);
  j(0, 1) = j(1, 0) = 1.0;
  j(0, 2) = j(2, 0) = std::sqrt(2.0);
  EXPECT_THROW(phase_recurrence_time(DeviceModel({0.0, 0.0, 0.0}, j)), NoRecurrenceError);
}

TEST(RotateResult, ZeroGeneratorAndRoundTrip) {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g;
  Operator x(4, 4);
  for (Index a = 0; a < 4; ++a)
    for (Index b = 0; b < 4; ++b) x(a, b) = Complex(g(rng), g(rng));
  EXPECT_EQ(rotate_result(x, Operator::Zero(4, 4), 1.3), x);
  Operator gen = Operator::Zero(4, 4);
  gen.diagonal() << 0.3, -1.2, 2.0, 0.1;
  EXPECT_LT(oracle::max_diff(rotate_result(rotate_result(x, gen, 0.8), gen, -0.8), x), 1e-12);
  EXPECT_THROW(rotate_result(x, pauli::x(), 1.0), std::invalid_argument);
}

TEST(RotateResult, CoherencePhase) {
  const double w = 2.0, t = 0.6;
  const Operator gen = -(w / 2) * pauli::z();
  const DensityMatrix plus = DensityMatrix::pure(StateVector(Vector::Ones(2)));
  const DensityMatrix out = rotate_result(plus, gen, t);
  EXPECT_LT(std::abs(out.matrix()(0, 1) - 0.5 * std::exp(-kI * w * t)), 1e-14);
  const DensityMatrix one = DensityMatrix::pure(StateVector::basis(2, 1));
  EXPECT_LT(oracle::max_diff(rotate_result(one, gen, t).matrix(), one.matrix()), 1e-15);
}

TEST(NoiseSpec, RatesAndValidation) {
  const NoiseSpec n = NoiseSpec::uniform(2, 30e-6, 30e-6);
  EXPECT_NEAR(n.relaxation_rate(0), 1.0 / 30e-6, 1e-6);
  EXPECT_NEAR(n.dephasing_rate(1), 1.0 / 30e-6 - 0.5 / 30e-6, 1e-6);
  EXPECT_TRUE(NoiseSpec::none(3).is_noiseless());
  EXPECT_THROW(NoiseSpec::uniform(1, 10e-6, 30e-6), std::invalid_argument);  // T2 > 2 T1
}

// Dense Lindbladian built directly from the Hamiltonian and collapse operators.
Operator dense_lindblad(const Operator& h, const std::vector<Operator>& cs, const Operator& x) {
  Operator out = -kI * (h * x - x * h);
  for (const auto& c : cs) {
    const Operator cdc = c.adjoint() * c;
    out += c * x * c.adjoint() - 0.5 * (cdc * x + x * cdc);
  }
  return out;
}

std::vector<Operator> collapse_ops(int m, double t1, double t2) {
  std::vector<Operator> cs;
  const double gphi = 1.0 / t2 - 0.5 / t1;
  for (int q = 0; q < m; ++q) {
    cs.push_back(std::sqrt(1.0 / t1) * embed(pauli::lowering(), q, m));
    cs.push_back(std::sqrt(gphi / 2.0) * embed(pauli::z(), q, m));
  }
  return cs;
}

TEST(StructuredGenerator, MatchesDenseLindbladian) {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> g;
  const DeviceModel dev = DeviceModel::star(2, 1.0, {0.3, 0.2, 0.1});
  const double t1 = 7.0, t2 = 9.0;
  for (const DriveSpec& drive : {itoffoli_drive(dev, 0.2, 0.5), fanout_drive(dev, 0, {1, 2}, 0.2, {0.1, 0.7})}) {
    const auto gen = StructuredGenerator::rotating_frame(dev, drive, NoiseSpec::uniform(3, t1, t2));
    Operator x(8, 8);
    for (Index a = 0; a < 8; ++a)
      for (Index b = 0; b < 8; ++b) x(a, b) = Complex(g(rng), g(rng));
    Operator out(8, 8);
    gen.apply(0.4, x, out);
    const Operator expected = dense_lindblad(rotating_frame_hamiltonian(dev, drive, 0.4), collapse_ops(3, t1, t2), x);
    EXPECT_LT(oracle::max_diff(out, expected), 1e-12);
    EXPECT_LT(oracle::max_diff(gen.hamiltonian(0.4), rotating_frame_hamiltonian(dev, drive, 0.4)), 1e-13);
  }
}

TEST(StructuredGenerator, NoiseSpecCollapseOperators) {
  const NoiseSpec n = NoiseSpec::uniform(2, 5.0, 6.0);
  const auto mine = n.collapse_operators();
  const auto ref = collapse_ops(2, 5.0, 6.0);
  ASSERT_EQ(mine.size(), ref.size());
  Operator x = Operator::Random(4, 4);
  Operator a = Operator::Zero(4, 4), b = Operator::Zero(4, 4);
  for (const auto& c : mine) a += c * x * c.adjoint() - 0.5 * (c.adjoint() * c * x + x * c.adjoint() * c);
  for (const auto& c : ref) b += c * x * c.adjoint() - 0.5 * (c.adjoint() * c * x + x * c.adjoint() * c);
  EXPECT_LT(oracle::max_diff(a, b), 1e-13);
}

TEST(Lindblad, UnitaryLimit) {
  const DeviceModel dev = DeviceModel::star(2, 1.0);
  const DriveSpec drive = itoffoli_drive(dev, 0.125);
  const double t = kPi / 0.25;
  const DensityMatrix rho0 = DensityMatrix::pure(StateVector(Vector::Ones(8)));
  const Trajectory tr = lindblad_evolve([&](double s) { return rotating_frame_hamiltonian(dev, drive, s); },
                                        NoiseSpec::none(3), rho0, t, 3);
  ASSERT_EQ(tr.states.size(), 3u);
  const Operator u = driven_propagator(dev, drive, t);
  EXPECT_LT(oracle::max_diff(tr.states.back().matrix(), u * rho0.matrix() * u.adjoint()), 1e-7);
  EXPECT_NEAR(tr.times.back(), t, 1e-15);
}

TEST(Lindblad, SingleQubitDecay) {
  const double t1 = 2.0;
  const DensityMatrix one = DensityMatrix::pure(StateVector::basis(2, 1));
  const Trajectory tr = lindblad_evolve([](double) { return Operator::Zero(2, 2).eval(); },
                                        NoiseSpec::uniform(1, t1, 2 * t1), one, 3.0, 4);
  for (std::size_t k = 0; k < tr.times.size(); ++k) {
    EXPECT_NEAR(tr.states[k].matrix()(1, 1).real(), std::exp(-tr.times[k] / t1), 1e-8);
  }
}

TEST(Lindblad, StructuredAndDenseAgree) {
  const DeviceModel dev = DeviceModel::star(2, 1.0, {0.5, 0.0, 0.0});
  const DriveSpec drive = itoffoli_drive(dev, 0.125, 0.3, Quadrature::kOne);
  const NoiseSpec noise = NoiseSpec::uniform(3, 20.0, 25.0);
  const DensityMatrix rho0 = DensityMatrix::pure(StateVector(Vector::LinSpaced(8, 1.0, 2.0).cast<Complex>()));
  const double t = 6.0;
  const auto gen = StructuredGenerator::rotating_frame(dev, drive, noise);
  EXPECT_TRUE(gen.is_time_dependent());
  const Trajectory a = lindblad_evolve(gen, rho0, t, 2);
  const Trajectory b =
      lindblad_evolve([&](double s) { return rotating_frame_hamiltonian(dev, drive, s); }, noise, rho0, t, 2);
  EXPECT_LT(oracle::max_diff(a.states.back().matrix(), b.states.back().matrix()), 1e-7);
}

TEST(Channel, SectorExponentialMatchesOdeEvolution) {
  const DeviceModel dev = DeviceModel::star(2, 1.0);
  const NoiseSpec noise = NoiseSpec::uniform(3, 30.0, 40.0);
  for (const DriveSpec& drive : {itoffoli_drive(dev, 0.125), fanout_drive(dev, 0, {1, 2}, 0.125)}) {
    const auto gen = StructuredGenerator::rotating_frame(dev, drive, noise);
    const double t = kPi / 0.25;
    const Channel ch = Channel::from_generator(gen, t);
    EXPECT_LT(ch.trace_defect(), 1e-10);
    for (Index k = 0; k < 64; k += 9) {
      Operator e = Operator::Zero(8, 8);
      e(k % 8, k / 8) = 1.0;
      EXPECT_LT(oracle::max_diff(ch.apply(e), evolve_operator(gen, e, 0.0, t, {1e-11, 1e-13})), 1e-8);
    }
  }
}

}  // namespace
}  // namespace ntoffoli
