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

#include "ntoffoli/qec.h"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "ntoffoli/gates.h"

namespace ntoffoli {

QubitState::QubitState(Complex alpha, Complex beta) {
  const double n = std::sqrt(std::norm(alpha) + std::norm(beta));
  if (!(n > 0.0) || !std::isfinite(n)) throw std::invalid_argument("qubit state has zero norm");
  alpha_ = alpha / n;
  beta_ = beta / n;
}

QubitState QubitState::from_bloch(double theta, double phi) {
  return {std::cos(0.5 * theta), std::exp(Complex(0.0, phi)) * std::sin(0.5 * theta)};
}

std::array<QubitState, 6> stabilizer_states() {
  const double s = 1.0 / std::sqrt(2.0);
  return {QubitState::zero(), QubitState::one(), QubitState(s, s),
          QubitState(s, -s),  QubitState(s, s * kI), QubitState(s, -s * kI)};
}

namespace {

DeviceModel star_device(int m, int center, const std::vector<int>& leaves, double coupling) {
  RealMatrix j = RealMatrix::Zero(m, m);
  for (int l : leaves) j(center, l) = j(l, center) = coupling;
  return DeviceModel(std::vector<double>(m, 0.0), std::move(j));
}

GateStep fanout_step(int m, int control, const std::vector<int>& targets, double coupling, double rabi) {
  DeviceModel dev = star_device(m, control, targets, coupling);
  DriveSpec drive = fanout_drive(dev, control, targets, rabi);
  std::string label = "CNOT^" + std::to_string(targets.size()) + " c" + std::to_string(control);
  return {std::move(label), std::move(dev), std::move(drive), cnotn_on(m, control, targets)};
}

void check_setup(const CodeSetup& s, int m) {
  if (!(s.coupling != 0.0) || !(s.ratio > 0.0)) throw std::invalid_argument("coupling and J/Omega must be nonzero");
  if (s.noise && s.noise->num_qubits() != m) throw std::invalid_argument("noise spec does not match the register");
}

Operator apply_step(const GateStep& step, const CodeSetup& setup, double window, const Operator& x) {
  if (setup.mode == GateMode::kIdeal) return step.ideal * x * step.ideal.adjoint();
  const NoiseSpec noise = setup.noise ? *setup.noise : NoiseSpec::none(step.device.num_qubits());
  if (noise.is_noiseless()) {
    const Operator w = frame_corrected_propagator(step.device, step.drive, window);
    return w * x * w.adjoint();
  }
  const auto gen = StructuredGenerator::rotating_frame(step.device, step.drive, noise);
  const Operator d = gen.diagonal().cast<Complex>().asDiagonal();
  return rotate_result(evolve_operator(gen, x, 0.0, window, setup.ode), d, window);
}

EncodingMap run_schedule(const Schedule& sched, const CodeSetup& setup, const std::vector<Vector>& init,
                         const std::optional<int>& error_after_first) {
  std::array<std::array<Operator, 2>, 2> out;
  for (int i = 0; i < 2; ++i) {
    for (int j = i; j < 2; ++j) {
      Operator x = init[i] * init[j].adjoint();
      for (std::size_t k = 0; k < sched.steps.size(); ++k) {
        x = apply_step(sched.steps[k], setup, sched.window, x);
        if (k == 0 && error_after_first) {
          const Operator e = embed(pauli::x(), *error_after_first, sched.num_qubits);
          x = e * x * e;
        }
      }
      out[i][j] = x;
    }
  }
  out[1][0] = out[0][1].adjoint();
  return EncodingMap(std::move(out));
}

Vector product_state(const std::vector<Vector>& factors) {
  Vector v = factors.front();
  for (std::size_t k = 1; k < factors.size(); ++k) {
    Vector next(v.size() * factors[k].size());
    for (Index a = 0; a < v.size(); ++a) next.segment(a * factors[k].size(), factors[k].size()) = v(a) * factors[k];
    v = std::move(next);
  }
  return v;
}

Vector ket(Complex a, Complex b) {
  Vector v(2);
  v << a, b;
  return v;
}

StateVector from_terms(const std::vector<std::pair<const char*, Complex>>& terms) {
  Vector v = Vector::Zero(128);
  const double amp = 1.0 / (2.0 * std::sqrt(2.0));
  for (const auto& [bits, phase] : terms) {
    Index idx = 0;
    for (const char* c = bits; *c; ++c) idx = (idx << 1) | (*c == '1' ? 1 : 0);
    v(idx) = amp * phase;
  }
  return StateVector(std::move(v));
}

}  // namespace

Schedule bitflip_schedule(double coupling, double ratio) {
  const double rabi = std::abs(coupling) / ratio;
  Schedule s;
  s.num_qubits = 3;
  s.window = kPi / (2.0 * rabi);
  const int d = kBitflipDataQubit;
  s.steps.push_back(fanout_step(3, d, {0, 1}, coupling, rabi));
  s.steps.push_back(fanout_step(3, d, {0, 1}, coupling, rabi));
  DeviceModel dev = star_device(3, d, {0, 1}, coupling);
  DriveSpec drive = toffoli_drive(dev, d, rabi);
  s.steps.push_back({"i-Toffoli t2", std::move(dev), std::move(drive), itoffoli_on(3, d, {0, 1})});
  return s;
}

Schedule steane_schedule(double coupling, double ratio) {
  const double rabi = std::abs(coupling) / ratio;
  Schedule s;
  s.num_qubits = 7;
  s.window = kPi / (2.0 * rabi);
  s.steps.push_back(fanout_step(7, 3, {4, 5}, coupling, rabi));
  s.steps.push_back(fanout_step(7, 2, {3, 4, 6}, coupling, rabi));
  s.steps.push_back(fanout_step(7, 1, {3, 5, 6}, coupling, rabi));
  s.steps.push_back(fanout_step(7, 0, {4, 5, 6}, coupling, rabi));
  return s;
}

LogicalPair steane_logical_states() {
  const Complex i = kI;
  return {from_terms({{"0000000", 1.0},
                      {"0101011", i},
                      {"0011101", i},
                      {"0110110", -1.0},
                      {"1000111", i},
                      {"1101100", -1.0},
                      {"1011010", -1.0},
                      {"1110001", -i}}),
          from_terms({{"0001110", -1.0},
                      {"0010011", -i},
                      {"0100101", -i},
                      {"0111000", 1.0},
                      {"1001001", -i},
                      {"1100010", 1.0},
                      {"1010100", 1.0},
                      {"1111111", i}})};
}

Operator EncodingMap::output(const QubitState& psi) const {
  const Complex c[2] = {psi.alpha(), psi.beta()};
  Operator rho = Operator::Zero(out_[0][0].rows(), out_[0][0].cols());
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) rho += c[i] * std::conj(c[j]) * out_[i][j];
  }
  return rho;
}

EncodingMap bitflip_map(const CodeSetup& setup) {
  check_setup(setup, 3);
  if (setup.error_site && (*setup.error_site < 0 || *setup.error_site > 2)) {
    throw std::invalid_argument("error site must be 0, 1 or 2");
  }
  const Schedule sched = bitflip_schedule(setup.coupling, setup.ratio);
  const Vector z = ket(1.0, 0.0);
  const std::vector<Vector> init = {product_state({z, z, ket(1.0, 0.0)}), product_state({z, z, ket(0.0, 1.0)})};
  return run_schedule(sched, setup, init, setup.error_site);
}

EncodingMap steane_map(const CodeSetup& setup) {
  check_setup(setup, 7);
  if (setup.error_site) throw std::invalid_argument("error injection is not defined for the Steane encoder");
  const Schedule sched = steane_schedule(setup.coupling, setup.ratio);
  const double s = 1.0 / std::sqrt(2.0);
  const Vector p = ket(s, s), z = ket(1.0, 0.0);
  std::vector<Vector> init;
  for (int k = 0; k < 2; ++k) init.push_back(product_state({p, p, p, k == 0 ? z : ket(0.0, 1.0), z, z, z}));
  return run_schedule(sched, setup, init, std::nullopt);
}

double bitflip_fidelity(const EncodingMap& map, const QubitState& psi) {
  const int keep[] = {kBitflipDataQubit};
  const Operator r = reduced_operator(map.output(psi), keep);
  const Vector v = ket(psi.alpha(), psi.beta());
  return v.dot(r * v).real();
}

namespace {

Vector steane_goal(const LogicalPair& lp, const QubitState& psi) {
  return psi.alpha() * lp.zero_l.amplitudes() + psi.beta() * lp.one_l.amplitudes();
}

}  // namespace

double steane_fidelity(const EncodingMap& map, const QubitState& psi) {
  const Vector g = steane_goal(steane_logical_states(), psi);
  return g.dot(map.output(psi) * g).real();
}

double run_bitflip_code(const CodeRun& run) { return bitflip_fidelity(bitflip_map(run.setup), run.input); }

SteaneResult steane_encode(const CodeRun& run) {
  const EncodingMap map = steane_map(run.setup);
  const Operator rho = map.output(run.input);
  const Vector goal = steane_goal(steane_logical_states(), run.input);
  const double f = goal.dot(rho * goal).real();
  return {DensityMatrix(0.5 * (rho + rho.adjoint()), 1e-7), f};
}

double bloch_average(const std::function<double(const QubitState&)>& f) {
  double s = 0.0;
  for (const auto& psi : stabilizer_states()) s += f(psi);
  return s / 6.0;
}

MonteCarloEstimate bloch_average_monte_carlo(const std::function<double(const QubitState&)>& f, std::size_t samples,
                                             std::uint64_t seed) {
  if (samples < 2) throw std::invalid_argument("need at least two samples");
  double s = 0.0, s2 = 0.0;
  for (std::size_t b = 0; b * kMonteCarloBlock < samples; ++b) {
    auto rng = substream(seed, b);
    const std::size_t hi = std::min(samples, (b + 1) * kMonteCarloBlock);
    for (std::size_t k = b * kMonteCarloBlock; k < hi; ++k) {
      const StateVector v = haar_state(2, rng);
      const double x = f(QubitState(v[0], v[1]));
      s += x;
      s2 += x * x;
    }
  }
  const double n = static_cast<double>(samples);
  MonteCarloEstimate e;
  e.samples = samples;
  e.mean = s / n;
  e.std_error = std::sqrt(std::max(0.0, (s2 - n * e.mean * e.mean) / (n - 1.0)) / n);
  return e;
}

double bitflip_average_fidelity(const CodeSetup& setup) {
  const EncodingMap map = bitflip_map(setup);
  return bloch_average([&](const QubitState& psi) { return bitflip_fidelity(map, psi); });
}

double steane_average_fidelity(const CodeSetup& setup) {
  const EncodingMap map = steane_map(setup);
  const LogicalPair lp = steane_logical_states();
  return bloch_average([&](const QubitState& psi) {
    const Vector g = steane_goal(lp, psi);
    return g.dot(map.output(psi) * g).real();
  });
}

}  // namespace ntoffoli
