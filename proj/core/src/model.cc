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

#include "ntoffoli/model.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <iostream>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>

namespace ntoffoli {

namespace {

std::mutex& warning_mutex() {
  static std::mutex m;
  return m;
}

void print_warning(std::string_view msg) { std::cerr << "warning: " << msg << '\n'; }

WarningHandler& warning_handler() {
  static WarningHandler h = print_warning;
  return h;
}

void require_qubit(const DeviceModel& dev, int q) {
  if (q < 0 || q >= dev.num_qubits()) {
    throw std::invalid_argument("qubit index " + std::to_string(q) + " out of range");
  }
}

}  // namespace

DeviceModel::DeviceModel(std::vector<double> omega, RealMatrix couplings, int max_controls)
    : omega_(std::move(omega)), couplings_(std::move(couplings)) {
  const auto m = static_cast<Index>(omega_.size());
  if (m < 2) throw std::invalid_argument("a device needs at least two qubits");
  if (m - 1 > max_controls) {
    throw std::invalid_argument("device has " + std::to_string(m - 1) + " controls, limit is " +
                                std::to_string(max_controls));
  }
  if (couplings_.rows() != m || couplings_.cols() != m) {
    throw std::invalid_argument("coupling matrix shape does not match the number of qubits");
  }
  for (Index j = 0; j < m; ++j) {
    if (couplings_(j, j) != 0.0) throw std::invalid_argument("coupling matrix diagonal must be zero");
    for (Index k = j + 1; k < m; ++k) {
      const double a = couplings_(j, k), b = couplings_(k, j);
      if (std::abs(a - b) > 1e-12 * std::max({1.0, std::abs(a), std::abs(b)})) {
        throw std::invalid_argument("coupling matrix is not symmetric");
      }
    }
  }
  for (double w : omega_) {
    if (!std::isfinite(w)) throw std::invalid_argument("qubit frequency is not finite");
  }
}

DeviceModel DeviceModel::star(int n_controls, double coupling, std::vector<double> omega) {
  if (n_controls < 1) throw std::invalid_argument("star device needs at least one control");
  const int m = n_controls + 1;
  if (omega.empty()) omega.assign(m, 0.0);
  RealMatrix j = RealMatrix::Zero(m, m);
  for (int k = 1; k < m; ++k) j(0, k) = j(k, 0) = coupling;
  return DeviceModel(std::move(omega), std::move(j));
}

DriveSpec::DriveSpec(double rabi, std::vector<DriveTone> tones, Quadrature quadrature)
    : rabi_(rabi), tones_(std::move(tones)), quadrature_(quadrature) {
  if (!(rabi_ > 0.0) || !std::isfinite(rabi_)) throw std::invalid_argument("Rabi frequency must be positive");
  if (tones_.empty()) throw std::invalid_argument("drive needs at least one target qubit");
  for (std::size_t a = 0; a < tones_.size(); ++a) {
    if (tones_[a].qubit < 0) throw std::invalid_argument("negative drive target");
    for (std::size_t b = a + 1; b < tones_.size(); ++b) {
      if (tones_[a].qubit == tones_[b].qubit) throw std::invalid_argument("qubit driven twice");
    }
  }
}

bool DriveSpec::drives(int qubit) const {
  return std::any_of(tones_.begin(), tones_.end(), [&](const DriveTone& t) { return t.qubit == qubit; });
}

const DriveTone& DriveSpec::tone(int qubit) const {
  for (const auto& t : tones_) {
    if (t.qubit == qubit) return t;
  }
  throw std::invalid_argument("qubit " + std::to_string(qubit) + " is not driven");
}

SubspaceLabel::SubspaceLabel(std::uint64_t bits, int n) : bits_(bits), n_(n) {
  if (n < 1 || n > 62) throw std::invalid_argument("subspace label length out of range");
  if (bits >> n) throw std::invalid_argument("subspace label has bits beyond its length");
  hamming_ = std::popcount(bits);
}

SubspaceLabel SubspaceLabel::from_string(std::string_view s) {
  std::uint64_t b = 0;
  for (char c : s) {
    if (c != '0' && c != '1') throw std::invalid_argument("subspace label must be a bitstring");
    b = (b << 1) | static_cast<std::uint64_t>(c == '1');
  }
  return SubspaceLabel(b, static_cast<int>(s.size()));
}

int SubspaceLabel::bit(int control) const {
  if (control < 1 || control > n_) throw std::invalid_argument("control index out of range");
  return static_cast<int>((bits_ >> (n_ - control)) & 1u);
}

SubspaceLabel SubspaceLabel::complement() const {
  return SubspaceLabel(~bits_ & ((std::uint64_t{1} << n_) - 1), n_);
}

RealVector static_energies(const DeviceModel& dev) {
  const int m = dev.num_qubits();
  const Index d = dev.dim();
  RealVector e(d);
  for (Index a = 0; a < d; ++a) {
    double v = 0.0;
    for (int j = 0; j < m; ++j) {
      const double sj = 1.0 - 2.0 * bit_of(a, j, m);
      v -= 0.5 * dev.omega(j) * sj;
      for (int k = j + 1; k < m; ++k) {
        const double sk = 1.0 - 2.0 * bit_of(a, k, m);
        v += 0.5 * dev.coupling(j, k) * sj * sk;
      }
    }
    e(a) = v;
  }
  return e;
}

Operator static_hamiltonian(const DeviceModel& dev) {
  return static_energies(dev).cast<Complex>().asDiagonal();
}

Operator drive_hamiltonian(const DeviceModel& dev, const DriveSpec& drive, double t) {
  const int m = dev.num_qubits();
  Operator h = Operator::Zero(dev.dim(), dev.dim());
  const Operator sx = pauli::x(), sy = pauli::y();
  for (const auto& tone : drive.tones()) {
    require_qubit(dev, tone.qubit);
    const double phi = (tone.detuning - dev.omega(tone.qubit)) * t + tone.phase;
    Operator local = drive.rabi() * std::cos(phi) * sx;
    if (drive.quadrature() == Quadrature::kTwo) local += drive.rabi() * std::sin(phi) * sy;
    h += embed(local, tone.qubit, m);
  }
  return h;
}

double subspace_gap(const DeviceModel& dev, const SubspaceLabel& x) {
  if (x.size() != dev.n_controls()) throw std::invalid_argument("subspace label length mismatch");
  double g = 0.0;
  for (int j = 1; j <= x.size(); ++j) g += dev.coupling(j, 0) * (x.bit(j) ? -1.0 : 1.0);
  return g;
}

double resonant_detuning(const DeviceModel& dev, int qubit, const std::vector<int>& ones) {
  require_qubit(dev, qubit);
  double g = 0.0;
  for (int k = 0; k < dev.num_qubits(); ++k) {
    if (k == qubit) continue;
    const bool one = std::find(ones.begin(), ones.end(), k) != ones.end();
    g += dev.coupling(qubit, k) * (one ? -1.0 : 1.0);
  }
  return g;
}

double uniform_detuning(int n, double coupling, int q) {
  if (q < 0 || q > n) throw std::invalid_argument("Hamming weight out of range");
  return coupling * (n - q);
}

DriveSpec itoffoli_drive(const DeviceModel& dev, double rabi, double theta, Quadrature quadrature) {
  const int n = dev.n_controls();
  const double delta0 = subspace_gap(dev, SubspaceLabel((std::uint64_t{1} << n) - 1, n));
  return DriveSpec(rabi, {DriveTone{0, delta0, theta}}, quadrature);
}

DriveSpec toffoli_drive(const DeviceModel& dev, int target, double rabi, double theta) {
  std::vector<int> others;
  for (int k = 0; k < dev.num_qubits(); ++k) {
    if (k != target) others.push_back(k);
  }
  return DriveSpec(rabi, {DriveTone{target, resonant_detuning(dev, target, others), theta}});
}

DriveSpec fanout_drive(const DeviceModel& dev, int control, const std::vector<int>& targets, double rabi,
                       const std::vector<double>& thetas) {
  require_qubit(dev, control);
  if (!thetas.empty() && thetas.size() != targets.size()) {
    throw std::invalid_argument("one phase per fanout target expected");
  }
  std::vector<DriveTone> tones;
  for (std::size_t k = 0; k < targets.size(); ++k) {
    if (targets[k] == control) throw std::invalid_argument("control cannot be a fanout target");
    tones.push_back({targets[k], resonant_detuning(dev, targets[k], {control}), thetas.empty() ? 0.0 : thetas[k]});
  }
  return DriveSpec(rabi, std::move(tones));
}

Operator interaction_hamiltonian(const DeviceModel& dev, const DriveSpec& drive, const SubspaceLabel& x) {
  if (drive.tones().size() != 1 || drive.tones().front().qubit != 0) {
    throw std::invalid_argument("interaction_hamiltonian needs a drive on qubit 0 only");
  }
  if (drive.quadrature() != Quadrature::kTwo) {
    throw std::invalid_argument("interaction_hamiltonian needs a two-quadrature drive");
  }
  const DriveTone& tone = drive.tones().front();
  const double delta = 0.5 * (subspace_gap(dev, x) - tone.detuning);
  return delta * pauli::z() +
         drive.rabi() * (std::cos(tone.phase) * pauli::x() + std::sin(tone.phase) * pauli::y());
}

Operator interaction_frame_generator(const DeviceModel& dev, const DriveSpec& drive) {
  const int m = dev.num_qubits();
  const Index d = dev.dim();
  const RealVector e = static_energies(dev);
  std::uint64_t driven = 0;
  for (const auto& tone : drive.tones()) {
    require_qubit(dev, tone.qubit);
    driven |= qubit_mask(tone.qubit, m);
  }
  std::map<std::uint64_t, std::pair<double, int>> mean;
  for (Index a = 0; a < d; ++a) {
    auto& slot = mean[static_cast<std::uint64_t>(a) & ~driven];
    slot.first += e(a);
    slot.second += 1;
  }
  RealVector g(d);
  for (Index a = 0; a < d; ++a) {
    const auto& slot = mean[static_cast<std::uint64_t>(a) & ~driven];
    double v = slot.first / slot.second;
    for (const auto& tone : drive.tones()) {
      const double s = 1.0 - 2.0 * bit_of(a, tone.qubit, m);
      v += 0.5 * (tone.detuning - dev.omega(tone.qubit)) * s;
    }
    g(a) = v;
  }
  return g.cast<Complex>().asDiagonal();
}

Operator rotating_frame_hamiltonian(const DeviceModel& dev, const DriveSpec& drive, double t) {
  const Operator g = interaction_frame_generator(dev, drive);
  const Index d = dev.dim();
  Operator h = drive_hamiltonian(dev, drive, t);
  // Conjugation by the diagonal exp(iGt) multiplies entry (a,b) by e^{i(g_a-g_b)t}.
  for (Index b = 0; b < d; ++b) {
    for (Index a = 0; a < d; ++a) {
      if (h(a, b) != Complex(0.0)) h(a, b) *= std::exp(Complex(0.0, (g(a, a).real() - g(b, b).real()) * t));
    }
  }
  const RealVector e = static_energies(dev);
  for (Index a = 0; a < d; ++a) h(a, a) += e(a) - g(a, a).real();
  return h;
}

void set_warning_handler(WarningHandler handler) {
  std::lock_guard lock(warning_mutex());
  warning_handler() = handler ? std::move(handler) : WarningHandler(print_warning);
}

void emit_warning(std::string_view message) {
  std::lock_guard lock(warning_mutex());
  warning_handler()(message);
}

std::optional<std::string> check_rwa(const DeviceModel& dev, const DriveSpec& drive) {
  if (drive.quadrature() != Quadrature::kOne) return std::nullopt;
  const int m = dev.num_qubits();
  double smallest = std::numeric_limits<double>::infinity();
  for (const auto& tone : drive.tones()) {
    smallest = std::min({smallest, std::abs(tone.detuning), std::abs(dev.omega(tone.qubit))});
    // every gap the driven qubit can see
    for (std::uint64_t cfg = 0; cfg < (std::uint64_t{1} << (m - 1)); ++cfg) {
      double gap = 0.0;
      int bit = 0;
      for (int k = 0; k < m; ++k) {
        if (k == tone.qubit) continue;
        gap += dev.coupling(tone.qubit, k) * (((cfg >> bit) & 1u) ? -1.0 : 1.0);
        ++bit;
      }
      smallest = std::min(smallest, std::abs(gap));
    }
  }
  if (drive.rabi() <= 0.1 * smallest) return std::nullopt;
  std::ostringstream os;
  os << "one-quadrature drive outside the rotating-wave regime: Omega = " << drive.rabi()
     << " rad/s exceeds a tenth of the smallest gap or frequency (" << smallest << " rad/s)";
  emit_warning(os.str());
  return os.str();
}

}  // namespace ntoffoli
