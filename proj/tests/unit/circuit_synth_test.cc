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
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "ntoffoli/circuit_synth.h"

namespace ntoffoli {
namespace {

constexpr double kGhz = 2.0 * kPi * 1e9;
constexpr double kMhz = 2.0 * kPi * 1e6;

std::vector<TableRow> table() { return load_table_rows(std::string(TEST_DATA_DIR) + "/table1.tsv"); }

// Relative tolerance with an absolute floor in printed units.
void expect_close(double derived, double printed, double rel, double floor, const std::string& what) {
  EXPECT_LE(std::abs(derived - printed), std::max(rel * std::abs(printed), floor))
      << what << ": derived " << derived << " printed " << printed;
}

TEST(CapacitanceMatrix, TwoControlStructure) {
  const CircuitParams p({1.0, {2.0, 3.0}, {4.0, 5.0}, 10.0, {20.0, 30.0}, {0.5, 0.7}});
  const RealMatrix k = capacitance_matrix(p);
  RealMatrix expected(3, 3);
  expected << 10.0 + 0.5 + 0.7, -0.5, -0.7,
              -0.5, 20.0 + 0.5, 0.0,
              -0.7, 0.0, 30.0 + 0.7;
  EXPECT_EQ(k, expected);
  EXPECT_EQ(k, k.transpose());
}

TEST(CapacitanceMatrix, ThreeControlStructure) {
  const CircuitParams p({1.0, {1.0, 1.0, 1.0}, {1.0, 1.0, 1.0}, 10.0, {20.0, 30.0, 40.0}, {0.1, 0.2, 0.3}});
  const RealMatrix k = capacitance_matrix(p);
  RealMatrix expected(4, 4);
  expected << 10.6, -0.1, -0.2, -0.3,
              -0.1, 20.1, 0.0, 0.0,
              -0.2, 0.0, 30.2, 0.0,
              -0.3, 0.0, 0.0, 40.3;
  EXPECT_LT((k - expected).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_EQ(k, k.transpose());
}

TEST(CapacitanceMatrix, UncoupledIsDiagonal) {
  const CircuitParams p = CircuitParams::symmetric(3, kGhz, kGhz, kGhz, 12.0, 34.0, 0.0);
  const RealMatrix k = capacitance_matrix(p);
  EXPECT_EQ(k, RealVector((RealVector(4) << 12.0, 34.0, 34.0, 34.0).finished()).asDiagonal().toDenseMatrix());
}

TEST(CircuitParams, Validation) {
  EXPECT_THROW(CircuitParams(1.0, {1.0}, {0.0}, 1.0, {1.0}, {0.1}), std::invalid_argument);
  EXPECT_THROW(CircuitParams(1.0, {1.0, 2.0}, {1.0}, 1.0, {1.0}, {0.1}), std::invalid_argument);
  EXPECT_THROW(CircuitParams(1.0, {1.0}, {1.0}, 0.0, {1.0}, {0.1}), std::invalid_argument);
  EXPECT_THROW(CircuitParams(1.0, {1.0}, {1.0}, 1.0, {1.0}, {-0.1}), std::invalid_argument);
  EXPECT_NO_THROW(CircuitParams(0.0, {0.0}, {1.0}, 1.0, {1.0}, {0.0}));
}

TEST(GateParams, ChargingEnergyClosedForm) {
  // e^2 / (2 hbar C) with CODATA constants.
  const double e = 1.602176634e-19, hbar = 1.054571817e-34;
  const CircuitParams p = CircuitParams::symmetric(2, 20 * kGhz, kGhz, 30 * kGhz, 15.0, 40.0, 0.0);
  const GateParams g = derive_gate_params(p);
  const double ec0 = e * e / (2.0 * hbar * 15e-15), eci = e * e / (2.0 * hbar * 40e-15);
  EXPECT_NEAR(g.charging(0) / ec0, 1.0, 1e-12);
  EXPECT_NEAR(g.charging(1) / eci, 1.0, 1e-12);
  EXPECT_NEAR(g.alpha0, g.charging(0) / 2.0, 1e-6);
}

TEST(GateParams, RowOneRoundTrip) {
  const TableRow r = table().at(0);
  ASSERT_EQ(r.id, 1);
  const GateParams g = derive_gate_params(r.circuit());
  expect_close(g.omega0 / kGhz, 30.9, 0.01, 0.05, "omega0");
  expect_close(g.omegai[0] / kGhz, 12.8, 0.01, 0.05, "omegai");
  expect_close(g.jz[0] / kMhz, -320.1, 0.02, 0.1, "Jz");
  expect_close(g.jx[0] / kMhz, 452.6, 0.02, 0.1, "Jx");
  expect_close(g.jxij(0, 1) / kMhz, 27.8, 0.02, 0.1, "Jxij");
  expect_close(100.0 * g.alpha_rel0, -2.0, 0.0, 0.1, "alpha0");
  expect_close(100.0 * g.alpha_reli[0], -2.0, 0.0, 0.1, "alphai");
  expect_close(g.ratio0, 71.1, 0.02, 0.05, "ratio0");
  expect_close(g.ratioi[0], 67.5, 0.02, 0.05, "ratioi");
  // independent check of the calibration
  EXPECT_NEAR((20.05 + 2 * 33.28) * kGhz / g.charging(0), 71.1, 0.02 * 71.1);
}

TEST(GateParams, RowThirteenRoundTrip) {
  const TableRow r = table().at(12);
  ASSERT_EQ(r.id, 13);
  const GateParams g = derive_gate_params(r.circuit());
  expect_close(g.omega0 / kGhz, 22.7, 0.01, 0.05, "omega0");
  expect_close(g.jz[0] / kMhz, -36.6, 0.02, 0.1, "Jz");
  EXPECT_LT(std::abs(g.jxij(0, 1) / kMhz), 0.1);
}

TEST(GateParams, SignsAndSymmetry) {
  const GateParams g = derive_gate_params(table().at(0).circuit());
  EXPECT_LT(g.jz[0], 0.0);
  EXPECT_EQ(g.jz[0], g.jz[1]);
  EXPECT_EQ(g.jxij(0, 1), g.jxij(1, 0));
  EXPECT_EQ(g.jxij(0, 0), 0.0);
}

TEST(GateParams, CouplingVanishesWithJunction) {
  auto jz = [](double ez) {
    return derive_gate_params(CircuitParams::symmetric(2, 20 * kGhz, kGhz, ez * kGhz, 15.0, 40.0, 0.04)).jz[0];
  };
  const double ref = std::abs(jz(1.0));
  double prev = ref;
  for (double ez : {1e-2, 1e-4, 1e-8}) {
    EXPECT_LT(std::abs(jz(ez)), prev);
    prev = std::abs(jz(ez));
  }
  EXPECT_LT(prev, 1e-7 * ref);
}

TEST(Drive, ZeroAndLinear) {
  const CircuitParams p = table().at(0).circuit();
  const double w = 12.8 * kGhz;
  EXPECT_EQ(derive_drive(p, 0.0, w, 0.0, 1).rabi, 0.0);
  const double a = derive_drive(p, 1e-12, w, 0.3, 1).rabi;
  EXPECT_NEAR(derive_drive(p, 2e-12, w, 0.3, 1).rabi, 2.0 * a, 1e-12 * std::abs(a));
  // theta = 0: beta(t) = Omega cos(w t)
  const DriveDerivation d = derive_drive(p, 1e-12, w, 0.0, 1);
  EXPECT_DOUBLE_EQ(d.beta(0.0), d.rabi);
  EXPECT_NEAR(d.beta(kPi / (2 * w)), 0.0, 1e-12 * std::abs(d.rabi));
}

TEST(Drive, AmplitudeRoundTrip) {
  const CircuitParams p = table().at(0).circuit();
  const GateParams g = derive_gate_params(p);
  const double target = g.jz[0] / 8.0;
  const double w = g.omegai[0];
  const double a = solve_drive_amplitude(p, target, w, 1);
  EXPECT_NEAR(derive_drive(p, a, w, 0.0, 1).rabi, target, 1e-10 * std::abs(target));
}

TEST(Bridge, RowOneCouplings) {
  const GateParams g = derive_gate_params(table().at(0).circuit());
  const ModelBridge b = gate_model_bridge(g, 2);
  ASSERT_EQ(b.device.num_qubits(), 3);
  for (int i = 1; i <= 2; ++i) expect_close(b.device.coupling(0, i) / kMhz, -320.1, 0.0, 0.1, "J");
  EXPECT_EQ(b.device.coupling(1, 2), 0.0);
  EXPECT_EQ(b.device.omega(0), g.omega0);
  for (int i = 0; i < 2; ++i) {
    EXPECT_NEAR(b.residual_ratio[i], std::abs(g.jx[i]) / std::abs(g.omegai[i] - g.omega0), 1e-15);
  }
}

TEST(Bridge, ZeroTransverseResidual) {
  GateParams g = derive_gate_params(table().at(0).circuit());
  std::fill(g.jx.begin(), g.jx.end(), 0.0);
  g.jxij.setZero();
  const ModelBridge b = gate_model_bridge(g, 2);
  for (double r : b.residual_ratio) EXPECT_EQ(r, 0.0);
  EXPECT_EQ(b.dropped_jxij.cwiseAbs().maxCoeff(), 0.0);
}

TEST(Bridge, PrintedResidualRatiosAreSmall) {
  for (const TableRow& r : table()) {
    const double ratio = std::abs(r.jx * 1e-3) / std::abs(r.omegai - r.omega0);
    EXPECT_LE(ratio, 0.03) << "row " << r.id;
  }
}

TEST(Optimizer, FindsFeasibleCircuitWithinFiftySeeds) {
  const SynthesisTargets t;
  const SynthesisResult res = optimize_circuit(t, 50, 7, 4);
  EXPECT_EQ(res.seeds_run, 50u);
  ASSERT_GE(res.feasible.size(), 1u) << res.diagnostic;
  for (const auto& c : res.feasible) {
    EXPECT_TRUE(is_feasible(c.gate, t));
    EXPECT_GE(std::abs(c.gate.jz[0]), t.jz_min * (1 - 1e-6));
    EXPECT_LE(std::abs(c.gate.jz[0]), t.jz_max * (1 + 1e-6));
  }
}

TEST(Optimizer, DeterministicAcrossThreadCounts) {
  const SynthesisTargets t;
  const SynthesisResult a = optimize_circuit(t, 6, 3, 1);
  const SynthesisResult b = optimize_circuit(t, 6, 3, 3);
  ASSERT_EQ(a.feasible.size(), b.feasible.size());
  EXPECT_EQ(a.best_cost, b.best_cost);
  for (std::size_t i = 0; i < a.feasible.size(); ++i) {
    EXPECT_EQ(a.feasible[i].seed_index, b.feasible[i].seed_index);
    EXPECT_EQ(a.feasible[i].cost, b.feasible[i].cost);
  }
}

TEST(Optimizer, InfeasibleTargetsReportDiagnostic) {
  SynthesisTargets t;
  t.jz_min = 2.0 * kPi * 100e9;
  t.jz_max = 2.0 * kPi * 200e9;
  const SynthesisResult res = optimize_circuit(t, 4, 1, 2);
  EXPECT_TRUE(res.feasible.empty());
  EXPECT_NE(res.diagnostic.find("no feasible"), std::string::npos);
  EXPECT_GT(res.best_cost, t.feasible_cost);
}

TEST(Optimizer, RefineFromRowOne) {
  const SynthesisTargets t;
  const SynthesisCandidate c = refine_circuit(table().at(0).circuit(), t);
  EXPECT_LE(c.cost, t.feasible_cost);
  EXPECT_TRUE(is_feasible(c.gate, t));
}

TEST(TableRows, ParsesCommentsAndHeader) {
  std::istringstream in(
      "# comment\n\nid e0 ei ez c0 ci cz w0 wi jz jx jxij a0 ai r0 ri\n"
      "3 1 2 3 4 5 6 7 8 -9 10 11 -2 -2 70 68\n");
  const auto rows = parse_table_rows(in);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].id, 3);
  EXPECT_EQ(rows[0].jz, -9.0);
  EXPECT_EQ(rows[0].ratioi, 68.0);
  std::istringstream bad("1 2 3\n");
  EXPECT_THROW(parse_table_rows(bad), std::runtime_error);
  EXPECT_EQ(table().size(), 14u);
}

}  // namespace
}  // namespace ntoffoli
