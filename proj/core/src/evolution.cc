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

#include "ntoffoli/evolution.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>

namespace ntoffoli {

NoiseSpec::NoiseSpec(std::vector<double> t1, std::vector<double> t2) : t1_(std::move(t1)), t2_(std::move(t2)) {
  if (t1_.size() != t2_.size()) throw std::invalid_argument("T1 and T2 lists differ in length");
  for (std::size_t q = 0; q < t1_.size(); ++q) {
    if (!(t1_[q] > 0.0) || !(t2_[q] > 0.0)) throw std::invalid_argument("T1 and T2 must be positive");
    if (std::isfinite(t2_[q]) && t2_[q] > 2.0 * t1_[q] * (1.0 + 1e-12)) {
      throw std::invalid_argument("T2 > 2 T1 is unphysical");
    }
  }
}

NoiseSpec NoiseSpec::uniform(int num_qubits, double t1, double t2) {
  return NoiseSpec(std::vector<double>(num_qubits, t1), std::vector<double>(num_qubits, t2));
}

NoiseSpec NoiseSpec::none(int num_qubits) {
  const double inf = std::numeric_limits<double>::infinity();
  return uniform(num_qubits, inf, inf);
}

double NoiseSpec::relaxation_rate(int q) const { return 1.0 / t1_.at(q); }

double NoiseSpec::dephasing_rate(int q) const {
  return std::max(0.0, 1.0 / t2_.at(q) - 0.5 / t1_.at(q));
}

bool NoiseSpec::is_noiseless() const {
  for (int q = 0; q < num_qubits(); ++q) {
    if (relaxation_rate(q) > 0.0 || dephasing_rate(q) > 0.0) return false;
  }
  return true;
}

std::vector<Operator> NoiseSpec::collapse_operators() const {
  std::vector<Operator> ops;
  const int m = num_qubits();
  for (int q = 0; q < m; ++q) {
    if (relaxation_rate(q) > 0.0) ops.push_back(std::sqrt(relaxation_rate(q)) * embed(pauli::lowering(), q, m));
  }
  for (int q = 0; q < m; ++q) {
    if (dephasing_rate(q) > 0.0) ops.push_back(std::sqrt(0.5 * dephasing_rate(q)) * embed(pauli::z(), q, m));
  }
  return ops;
}

Operator analytic_subspace_propagator(double delta, double rabi, double theta, double t) {
  const double v = std::hypot(rabi, delta);
  const double vt = v * t;
  // sin(vt)/v, with the series near v = 0
  double sinc_t;
  if (std::abs(vt) < 1e-4) {
    const double x2 = vt * vt;
    sinc_t = t * (1.0 - x2 / 6.0 + x2 * x2 / 120.0);
  } else {
    sinc_t = std::sin(vt) / v;
  }
  const Complex c = std::cos(vt);
  const Complex s = -kI * sinc_t;
  Operator u(2, 2);
  u(0, 0) = c + s * delta;
  u(1, 1) = c - s * delta;
  u(0, 1) = s * rabi * std::exp(Complex(0.0, -theta));
  u(1, 0) = s * rabi * std::exp(Complex(0.0, theta));
  return u;
}

Operator time_ordered_propagator(const HamiltonianSource& h, double t0, double t1, const OdeOptions& options) {
  Operator u = h(t0);
  const Index d = u.rows();
  u = Operator::Identity(d, d);
  auto rhs = [&](double t, const Operator& y, Operator& dy) { dy.noalias() = -kI * (h(t) * y); };
  integrate_dopri5(rhs, t0, t1, u, options);
  return u;
}

Operator driven_propagator(const DeviceModel& dev, const DriveSpec& drive, double t) {
  const bool target_only = drive.tones().size() == 1 && drive.tones().front().qubit == 0;
  if (drive.quadrature() == Quadrature::kTwo && target_only) {
    const int n = dev.n_controls();
    const Index half = Index{1} << n;
    const DriveTone& tone = drive.tones().front();
    Operator u = Operator::Zero(dev.dim(), dev.dim());
    for (Index x = 0; x < half; ++x) {
      const double delta = 0.5 * (subspace_gap(dev, SubspaceLabel(static_cast<std::uint64_t>(x), n)) - tone.detuning);
      const Operator b = analytic_subspace_propagator(delta, drive.rabi(), tone.phase, t);
      u(x, x) = b(0, 0);
      u(x, x + half) = b(0, 1);
      u(x + half, x) = b(1, 0);
      u(x + half, x + half) = b(1, 1);
    }
    return u;
  }
  if (drive.quadrature() == Quadrature::kTwo) return unitary_exp(rotating_frame_hamiltonian(dev, drive), t);
  check_rwa(dev, drive);
  return time_ordered_propagator([&](double s) { return rotating_frame_hamiltonian(dev, drive, s); }, 0.0, t);
}

Operator frame_corrected_propagator(const DeviceModel& dev, const DriveSpec& drive, double t) {
  const RealVector e = static_energies(dev);
  const Operator g = interaction_frame_generator(dev, drive);
  Operator u = driven_propagator(dev, drive, t);
  for (Index a = 0; a < u.rows(); ++a) u.row(a) *= std::exp(kI * (e(a) - g(a, a).real()) * t);
  return u;
}

Operator lab_frame_propagator(const DeviceModel& dev, const DriveSpec& drive, double t) {
  const Operator g = interaction_frame_generator(dev, drive);
  Operator u = driven_propagator(dev, drive, t);
  for (Index a = 0; a < u.rows(); ++a) u.row(a) *= std::exp(-kI * g(a, a) * t);
  return u;
}

namespace {

// Continued-fraction approximation p/q of x with q <= max_den and
// |x - p/q| <= tol * max(1, |x|).
bool rational_approx(double x, long max_den, double tol, long& p, long& q) {
  long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double r = x;
  for (int it = 0; it < 64; ++it) {
    const double a = std::floor(r);
    const long ai = static_cast<long>(a);
    const long h2 = ai * h1 + h0, k2 = ai * k1 + k0;
    if (k2 > max_den) return false;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    if (std::abs(x - static_cast<double>(h1) / static_cast<double>(k1)) <= tol * std::max(1.0, std::abs(x))) {
      p = h1;
      q = k1;
      return true;
    }
    const double frac = r - a;
    if (frac == 0.0) return false;
    r = 1.0 / frac;
  }
  return false;
}

}  // namespace

double phase_recurrence_time(const DeviceModel& dev) {
  std::vector<double> zero(dev.num_qubits(), 0.0);
  const DeviceModel ising(zero, dev.couplings(), dev.n_controls());
  const RealVector e = static_energies(ising);
  const double lo = e.minCoeff();
  const double scale = std::max(1e-300, (e.array() - lo).maxCoeff());
  std::vector<double> diffs;
  for (Index a = 0; a < e.size(); ++a) {
    const double dlt = e(a) - lo;
    if (dlt > 1e-9 * scale) diffs.push_back(dlt);
  }
  if (diffs.empty()) return 0.0;
  const double dmin = *std::min_element(diffs.begin(), diffs.end());
  long lcm = 1;
  std::vector<std::pair<long, long>> ratios;
  for (double dlt : diffs) {
    long p = 0, q = 1;
    if (!rational_approx(dlt / dmin, 10000, 1e-9, p, q)) {
      throw NoRecurrenceError("Ising spectrum is incommensurate: no phase recurrence");
    }
    ratios.emplace_back(p, q);
    lcm = std::lcm(lcm, q);
    if (lcm > 1'000'000) throw NoRecurrenceError("Ising spectrum is incommensurate: no phase recurrence");
  }
  long g = 0;
  for (const auto& [p, q] : ratios) g = std::gcd(g, p * (lcm / q));
  const double base = dmin / static_cast<double>(lcm) * static_cast<double>(g);
  return 2.0 * kPi / base;
}

Operator rotate_result(const Operator& x, const Operator& generator, double t) {
  if (!is_diagonal(generator)) throw std::invalid_argument("rotate_result needs a diagonal generator");
  if (generator.rows() != x.rows() || x.rows() != x.cols()) throw std::invalid_argument("rotate_result dimension mismatch");
  const Index d = generator.rows();
  Vector w(d);
  for (Index a = 0; a < d; ++a) w(a) = std::exp(kI * generator(a, a) * t);
  Operator out = x;
  for (Index b = 0; b < d; ++b) {
    for (Index a = 0; a < d; ++a) out(a, b) *= w(a) * std::conj(w(b));
  }
  return out;
}

DensityMatrix rotate_result(const DensityMatrix& rho, const Operator& generator, double t) {
  return DensityMatrix(rotate_result(rho.matrix(), generator, t), 1e-8);
}

StructuredGenerator::StructuredGenerator(RealVector diagonal, std::vector<LocalTerm> terms, NoiseSpec noise)
    : diagonal_(std::move(diagonal)), terms_(std::move(terms)), noise_(std::move(noise)) {
  const Index d = diagonal_.size();
  if (!is_power_of_two(d) || d < 2) throw std::invalid_argument("generator dimension must be a power of two");
  m_ = 0;
  for (Index k = d; k > 1; k >>= 1) ++m_;
  if (noise_.num_qubits() != m_) throw std::invalid_argument("noise spec does not match the register size");
  for (const auto& term : terms_) {
    if (term.qubit < 0 || term.qubit >= m_) throw std::invalid_argument("local term on a missing qubit");
    if (!term.varying && (term.op.rows() != 2 || term.op.cols() != 2)) {
      throw std::invalid_argument("local terms must be 2x2");
    }
  }
  multiplier_.resize(d, d);
  for (Index b = 0; b < d; ++b) {
    for (Index a = 0; a < d; ++a) {
      double decay = 0.0;
      for (int q = 0; q < m_; ++q) {
        const int na = bit_of(a, q, m_), nb = bit_of(b, q, m_);
        decay += 0.5 * noise_.relaxation_rate(q) * (na + nb);
        if (na != nb) decay += noise_.dephasing_rate(q);
      }
      multiplier_(a, b) = Complex(-decay, -(diagonal_(a) - diagonal_(b)));
    }
  }
}

StructuredGenerator StructuredGenerator::rotating_frame(const DeviceModel& dev, const DriveSpec& drive,
                                                        const NoiseSpec& noise) {
  const Operator g = interaction_frame_generator(dev, drive);
  const RealVector e = static_energies(dev);
  RealVector diag = e - g.diagonal().real();
  std::vector<LocalTerm> terms;
  const double rabi = drive.rabi();
  for (const auto& tone : drive.tones()) {
    if (drive.quadrature() == Quadrature::kTwo) {
      terms.push_back({tone.qubit,
                       rabi * (std::cos(tone.phase) * pauli::x() + std::sin(tone.phase) * pauli::y()),
                       {}});
    } else {
      const double w = tone.detuning - dev.omega(tone.qubit);
      const double theta = tone.phase;
      terms.push_back({tone.qubit, Operator(), [rabi, w, theta](double t) {
                         const Complex c = rabi * std::cos(w * t + theta) * std::exp(Complex(0.0, w * t));
                         Operator a = Operator::Zero(2, 2);
                         a(0, 1) = c;
                         a(1, 0) = std::conj(c);
                         return a;
                       }});
    }
  }
  return StructuredGenerator(std::move(diag), std::move(terms), noise);
}

bool StructuredGenerator::is_time_dependent() const {
  return std::any_of(terms_.begin(), terms_.end(), [](const LocalTerm& t) { return static_cast<bool>(t.varying); });
}

void StructuredGenerator::apply(double t, const Operator& x, Operator& out) const {
  const Index d = dim();
  out = multiplier_.cwiseProduct(x);
  for (int q = 0; q < m_; ++q) {
    const double g1 = noise_.relaxation_rate(q);
    if (g1 <= 0.0) continue;
    const Index mask = static_cast<Index>(qubit_mask(q, m_));
    for (Index b = 0; b < d; ++b) {
      if (b & mask) continue;
      for (Index a = 0; a < d; ++a) {
        if (a & mask) continue;
        out(a, b) += g1 * x(a | mask, b | mask);
      }
    }
  }
  for (const auto& term : terms_) {
    const Operator op = term.varying ? term.varying(t) : term.op;
    const Complex a00 = op(0, 0), a01 = op(0, 1), a10 = op(1, 0), a11 = op(1, 1);
    const Index mask = static_cast<Index>(qubit_mask(term.qubit, m_));
    // -i A x
    for (Index b = 0; b < d; ++b) {
      for (Index a0 = 0; a0 < d; ++a0) {
        if (a0 & mask) continue;
        const Index a1 = a0 | mask;
        const Complex x0 = x(a0, b), x1 = x(a1, b);
        out(a0, b) += -kI * (a00 * x0 + a01 * x1);
        out(a1, b) += -kI * (a10 * x0 + a11 * x1);
      }
    }
    // +i x A
    for (Index b0 = 0; b0 < d; ++b0) {
      if (b0 & mask) continue;
      const Index b1 = b0 | mask;
      for (Index a = 0; a < d; ++a) {
        const Complex x0 = x(a, b0), x1 = x(a, b1);
        out(a, b0) += kI * (x0 * a00 + x1 * a10);
        out(a, b1) += kI * (x0 * a01 + x1 * a11);
      }
    }
  }
}

Operator StructuredGenerator::hamiltonian(double t) const {
  Operator h = diagonal_.cast<Complex>().asDiagonal();
  for (const auto& term : terms_) h += embed(term.varying ? term.varying(t) : term.op, term.qubit, m_);
  return h;
}

namespace {

Trajectory sample_evolution(const std::function<void(double, const Operator&, Operator&)>& rhs,
                            const DensityMatrix& rho0, double t_end, int samples, const LindbladOptions& options) {
  if (samples < 2) throw std::invalid_argument("need at least two samples");
  if (!(t_end > 0.0)) throw std::invalid_argument("t_end must be positive");
  Trajectory traj;
  traj.times.push_back(0.0);
  traj.states.push_back(rho0);
  Operator rho = rho0.matrix();
  double hint = 0.0;
  for (int k = 1; k < samples; ++k) {
    const double t0 = t_end * (k - 1) / (samples - 1);
    const double t1 = k + 1 == samples ? t_end : t_end * k / (samples - 1);
    try {
      integrate_dopri5(rhs, t0, t1, rho, options.ode, &hint);
    } catch (const IntegrationError& e) {
      throw SimulationError(std::string("Lindblad integration failed: ") + e.what());
    }
    traj.times.push_back(t1);
    traj.states.emplace_back(rho, options.state_tolerance);
  }
  return traj;
}

}  // namespace

Trajectory lindblad_evolve(const HamiltonianSource& hamiltonian, const NoiseSpec& noise, const DensityMatrix& rho0,
                           double t_end, int samples, const LindbladOptions& options) {
  const Index d = rho0.dim();
  if (noise.num_qubits() != qubit_count(rho0.matrix())) {
    throw std::invalid_argument("noise spec does not match the register size");
  }
  const StructuredGenerator dissipator(RealVector::Zero(d), {}, noise);
  auto rhs = [&](double t, const Operator& x, Operator& out) {
    dissipator.apply(t, x, out);
    const Operator h = hamiltonian(t);
    out.noalias() += -kI * (h * x);
    out.noalias() += kI * (x * h);
  };
  return sample_evolution(rhs, rho0, t_end, samples, options);
}

Trajectory lindblad_evolve(const StructuredGenerator& generator, const DensityMatrix& rho0, double t_end,
                           int samples, const LindbladOptions& options) {
  if (generator.dim() != rho0.dim()) throw std::invalid_argument("state and generator dimensions differ");
  auto rhs = [&](double t, const Operator& x, Operator& out) { generator.apply(t, x, out); };
  return sample_evolution(rhs, rho0, t_end, samples, options);
}

Operator evolve_operator(const StructuredGenerator& generator, const Operator& x, double t0, double t1,
                         const OdeOptions& options) {
  if (generator.dim() != x.rows() || x.rows() != x.cols()) throw std::invalid_argument("operator dimension mismatch");
  Operator y = x;
  auto rhs = [&](double t, const Operator& in, Operator& out) { generator.apply(t, in, out); };
  try {
    integrate_dopri5(rhs, t0, t1, y, options);
  } catch (const IntegrationError& e) {
    throw SimulationError(std::string("operator evolution failed: ") + e.what());
  }
  return y;
}

}  // namespace ntoffoli
