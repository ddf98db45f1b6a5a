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

#ifndef NTOFFOLI_FIDELITY_H_
#define NTOFFOLI_FIDELITY_H_

#include <cstdint>
#include <map>
#include <random>

#include "ntoffoli/channel.h"
#include "ntoffoli/linalg.h"

namespace ntoffoli {

struct FidelityReport {
  double trace_fidelity = 0.0;
  double process_fidelity = 0.0;
  std::map<int, double> per_subspace;  // Hamming weight q -> F_q
  double operator_norm_error = 0.0;
};

// Closed-form (1/2)|tr(U_q U_goal,q^dagger)| at T = pi/(2 Omega), gamma = delta/Omega,
// scored against the undriven target exp(-i delta sz T).
double subspace_trace_fidelity(double gamma);

// (1/2^{n+1}) sum_q 2 F_q C(n, q) with gamma_q = ratio (n - q). The resonant
// term q = n is scored against the flip target and is exactly 1.
double weighted_trace_fidelity(int n, double ratio);

// (dim F_tr^2 + 1) / (dim + 1)
double process_fidelity_from_trace(double f_tr, Index dim);

// Average gate fidelity of the unitary u against goal, from the global trace.
double process_fidelity_unitary(const Operator& u, const Operator& goal);

// Average gate fidelity (d F_e + 1)/(d + 1), F_e = (1/d^2) sum <u_m|C(|m><n|)|u_n>.
// Throws if the channel is not trace preserving within `tp_tolerance`.
double process_fidelity_channel(const Channel& channel, const Operator& goal, double tp_tolerance = 1e-6);

struct MonteCarloEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;
};

// Haar-random pure state.
StateVector haar_state(Index dim, std::mt19937_64& rng);

// Random stream for block `block` of a run seeded with `seed`. Sample
// streams are split into fixed blocks so results do not depend on threads.
std::mt19937_64 substream(std::uint64_t seed, std::uint64_t block);
inline constexpr std::size_t kMonteCarloBlock = 512;

// Monte Carlo estimate of the Haar average of <psi|W^dagger C(psi) W|psi>.
MonteCarloEstimate process_fidelity_monte_carlo(const Channel& channel, const Operator& goal,
                                                std::size_t samples = 20000, std::uint64_t seed = 1,
                                                int threads = 1);

// Decomposition of U_q(T) - U_goal,q(T) as a 2x2 matrix.
Operator subspace_error_matrix(double gamma, double theta);
// Largest singular value of subspace_error_matrix.
double per_subspace_norm(double gamma, double theta = 0.0);
// 2 - 2 cos(pi g/2) cos(pi w/2) - 2 (g/w) sin(pi g/2) sin(pi w/2), w = sqrt(1+g^2).
double per_subspace_norm_squared_closed_form(double gamma);
// Worst subspace for n controls: max over q < n of per_subspace_norm(ratio (n - q)).
double max_subspace_norm(int n, double ratio, double theta = 0.0);
// Closed form of the worst case, the q = n-1 subspace.
double operator_norm_error(double ratio);

// Process fidelity of a driven gate at time t against goal, in the frame of
// frame_corrected_propagator. The noisy overload builds the channel by
// sector-wise exponentiation of the Lindblad generator.
double driven_gate_fidelity(const DeviceModel& dev, const DriveSpec& drive, const Operator& goal, double t);
double driven_gate_fidelity(const DeviceModel& dev, const DriveSpec& drive, const Operator& goal, double t,
                            const NoiseSpec& noise);

FidelityReport itoffoli_report(int n, double ratio);

}  // namespace ntoffoli

#endif  // NTOFFOLI_FIDELITY_H_
