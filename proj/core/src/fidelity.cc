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

#include "ntoffoli/fidelity.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

namespace ntoffoli {

double subspace_trace_fidelity(double gamma) {
  const double w = std::sqrt(1.0 + gamma * gamma);
  const double g = 0.5 * kPi * gamma, v = 0.5 * kPi * w;
  return std::cos(g) * std::cos(v) + gamma / w * std::sin(g) * std::sin(v);
}

double weighted_trace_fidelity(int n, double ratio) {
  if (n < 1) throw std::invalid_argument("need at least one control");
  if (!(ratio > 0.0)) throw std::invalid_argument("J/Omega must be positive");
  double sum = 0.0, binom = 1.0;
  for (int q = 0; q <= n; ++q) {
    const double fq = q == n ? 1.0 : subspace_trace_fidelity(ratio * (n - q));
    sum += 2.0 * fq * binom;
    binom = binom * (n - q) / (q + 1);
  }
  return sum / std::ldexp(1.0, n + 1);
}

double process_fidelity_from_trace(double f_tr, Index dim) {
  if (f_tr < 0.0 || f_tr > 1.0 + 1e-12) throw std::invalid_argument("trace fidelity must lie in [0, 1]");
  const double d = static_cast<double>(dim);
  return (d * f_tr * f_tr + 1.0) / (d + 1.0);
}

double process_fidelity_unitary(const Operator& u, const Operator& goal) {
  if (u.rows() != goal.rows() || u.cols() != goal.cols()) throw std::invalid_argument("dimension mismatch");
  const double d = static_cast<double>(u.rows());
  const double tr = std::abs((goal.adjoint() * u).trace());
  return (tr * tr + d) / (d * (d + 1.0));
}

double process_fidelity_channel(const Channel& channel, const Operator& goal, double tp_tolerance) {
  const double defect = channel.trace_defect();
  if (defect > tp_tolerance) {
    throw std::invalid_argument("channel is not trace preserving (defect " + std::to_string(defect) + ")");
  }
  const double d = static_cast<double>(channel.dim());
  const double fe = channel.goal_overlap(goal).real() / (d * d);
  return (d * fe + 1.0) / (d + 1.0);
}

StateVector haar_state(Index dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(dim);
  for (Index k = 0; k < dim; ++k) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(k) = Complex(re, im);
  }
  return StateVector(std::move(v));
}

std::mt19937_64 substream(std::uint64_t seed, std::uint64_t block) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32), 0x5eedu};
  return std::mt19937_64(seq);
}

MonteCarloEstimate process_fidelity_monte_carlo(const Channel& channel, const Operator& goal, std::size_t samples,
                                                std::uint64_t seed, int threads) {
  if (samples < 2) throw std::invalid_argument("need at least two samples");
  const Index d = channel.dim();
  const std::size_t nblocks = (samples + kMonteCarloBlock - 1) / kMonteCarloBlock;
  std::vector<double> sums(nblocks, 0.0), sq(nblocks, 0.0);
  auto run_block = [&](std::size_t b) {
    auto rng = substream(seed, b);
    const std::size_t lo = b * kMonteCarloBlock, hi = std::min(samples, lo + kMonteCarloBlock);
    for (std::size_t i = lo; i < hi; ++i) {
      const StateVector psi = haar_state(d, rng);
      const Vector& a = psi.amplitudes();
      const Vector target = goal * a;
      const double f = target.dot(channel.apply(a * a.adjoint()) * target).real();
      sums[b] += f;
      sq[b] += f * f;
    }
  };
  const int workers = std::max(1, std::min<int>(threads, static_cast<int>(nblocks)));
  if (workers == 1) {
    for (std::size_t b = 0; b < nblocks; ++b) run_block(b);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t b = static_cast<std::size_t>(w); b < nblocks; b += static_cast<std::size_t>(workers)) {
          run_block(b);
        }
      });
    }
    for (auto& th : pool) th.join();
  }
  double s = 0.0, s2 = 0.0;
  for (std::size_t b = 0; b < nblocks; ++b) {
    s += sums[b];
    s2 += sq[b];
  }
  const double n = static_cast<double>(samples);
  MonteCarloEstimate est;
  est.samples = samples;
  est.mean = s / n;
  const double var = std::max(0.0, (s2 - n * est.mean * est.mean) / (n - 1.0));
  est.std_error = std::sqrt(var / n);
  return est;
}

Operator subspace_error_matrix(double gamma, double theta) {
  const double w = std::sqrt(1.0 + gamma * gamma);
  const double g = 0.5 * kPi * gamma, v = 0.5 * kPi * w;
  const double a = -std::cos(g) + std::cos(v);
  const double b = std::sin(g) - gamma / w * std::sin(v);
  const double c = std::sin(v) / w;
  return a * pauli::identity() + kI * b * pauli::z() -
         kI * c * (std::cos(theta) * pauli::x() + std::sin(theta) * pauli::y());
}

double per_subspace_norm(double gamma, double theta) { return operator_norm(subspace_error_matrix(gamma, theta)); }

double per_subspace_norm_squared_closed_form(double gamma) {
  const double w = std::sqrt(1.0 + gamma * gamma);
  const double g = 0.5 * kPi * gamma, v = 0.5 * kPi * w;
  return 2.0 - 2.0 * std::cos(g) * std::cos(v) - 2.0 * gamma / w * std::sin(g) * std::sin(v);
}

double max_subspace_norm(int n, double ratio, double theta) {
  if (n < 1) throw std::invalid_argument("need at least one control");
  double worst = 0.0;
  for (int q = 0; q < n; ++q) worst = std::max(worst, per_subspace_norm(ratio * (n - q), theta));
  return worst;
}

double operator_norm_error(double ratio) {
  if (!(ratio > 0.0)) throw std::invalid_argument("J/Omega must be positive");
  return std::sqrt(std::max(0.0, per_subspace_norm_squared_closed_form(ratio)));
}

double driven_gate_fidelity(const DeviceModel& dev, const DriveSpec& drive, const Operator& goal, double t) {
  return process_fidelity_unitary(frame_corrected_propagator(dev, drive, t), goal);
}

double driven_gate_fidelity(const DeviceModel& dev, const DriveSpec& drive, const Operator& goal, double t,
                            const NoiseSpec& noise) {
  if (noise.is_noiseless()) return driven_gate_fidelity(dev, drive, goal, t);
  const auto gen = StructuredGenerator::rotating_frame(dev, drive, noise);
  const Operator d = gen.diagonal().cast<Complex>().asDiagonal();
  return process_fidelity_channel(Channel::from_generator(gen, t).rotated(d, t), goal);
}

FidelityReport itoffoli_report(int n, double ratio) {
  FidelityReport r;
  for (int q = 0; q <= n; ++q) r.per_subspace[q] = q == n ? 1.0 : subspace_trace_fidelity(ratio * (n - q));
  r.trace_fidelity = weighted_trace_fidelity(n, ratio);
  r.process_fidelity = process_fidelity_from_trace(r.trace_fidelity, Index{1} << (n + 1));
  r.operator_norm_error = max_subspace_norm(n, ratio);
  return r;
}

}  // namespace ntoffoli
