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

#ifndef NTOFFOLI_ODE_H_
#define NTOFFOLI_ODE_H_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>

namespace ntoffoli {

class IntegrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OdeOptions {
  double rtol = 1e-9;
  double atol = 1e-12;
  double initial_step = 0.0;  // 0 picks one automatically
  double max_step = std::numeric_limits<double>::infinity();
  std::size_t max_steps = 20'000'000;
};

struct OdeStats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t evaluations = 0;
  double last_step = 0.0;
};

namespace detail {

// max_i |err_i| / (atol + rtol * max(|y_i|, |ynew_i|))
template <class State>
double scaled_error(const State& err, const State& y, const State& ynew, const OdeOptions& o) {
  const auto scale = (o.atol + o.rtol * y.cwiseAbs().cwiseMax(ynew.cwiseAbs()).array()).eval();
  return (err.cwiseAbs().array() / scale).maxCoeff();
}

}  // namespace detail

// Dormand-Prince 5(4) with the embedded 4th-order error estimate and FSAL.
// `f(t, y, dydt)` writes dy/dt. State is any Eigen dense type. Integrates y
// in place from t0 to t1 and returns step statistics; `hint` (if non-null)
// carries a step size between consecutive calls.
template <class State, class Rhs>
OdeStats integrate_dopri5(Rhs&& f, double t0, double t1, State& y, const OdeOptions& opt,
                          double* hint = nullptr) {
  constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                   a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                   a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                   b6 = 11.0 / 84;
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                   e6 = 22.0 / 525, e7 = -1.0 / 40;

  OdeStats stats;
  const double span = t1 - t0;
  if (span == 0.0) return stats;
  if (!(span > 0.0)) throw IntegrationError("integration interval must be increasing");

  State k1 = State::Zero(y.rows(), y.cols());
  State k2 = k1, k3 = k1, k4 = k1, k5 = k1, k6 = k1, k7 = k1, tmp = k1, ynew = k1, err = k1;
  f(t0, y, k1);
  ++stats.evaluations;

  double h;
  if (hint != nullptr && *hint > 0.0) {
    h = *hint;
  } else if (opt.initial_step > 0.0) {
    h = opt.initial_step;
  } else {
    const auto sc = (opt.atol + opt.rtol * y.cwiseAbs().array()).eval();
    const double d0 = (y.cwiseAbs().array() / sc).maxCoeff();
    const double d1 = (k1.cwiseAbs().array() / sc).maxCoeff();
    h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 * span : 0.01 * d0 / d1;
    h = std::min(h, 0.1 * span);
  }
  h = std::min({h, opt.max_step, span});

  double t = t0;
  while (t < t1) {
    if (stats.accepted + stats.rejected >= opt.max_steps) {
      throw IntegrationError("step limit reached at t = " + std::to_string(t));
    }
    bool last = false;
    if (t + h >= t1 || t + 1.01 * h >= t1) {
      h = t1 - t;
      last = true;
    }
    if (h <= std::abs(t) * 4.0 * std::numeric_limits<double>::epsilon()) {
      throw IntegrationError("step size underflow at t = " + std::to_string(t));
    }
    tmp = y + h * a21 * k1;
    f(t + c2 * h, tmp, k2);
    tmp = y + h * (a31 * k1 + a32 * k2);
    f(t + c3 * h, tmp, k3);
    tmp = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
    f(t + c4 * h, tmp, k4);
    tmp = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
    f(t + c5 * h, tmp, k5);
    tmp = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
    f(t + h, tmp, k6);
    ynew = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    f(t + h, ynew, k7);
    stats.evaluations += 6;
    err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    const double en = detail::scaled_error(err, y, ynew, opt);
    if (!std::isfinite(en)) throw IntegrationError("non-finite error estimate");
    if (en <= 1.0) {
      t = last ? t1 : t + h;
      y.swap(ynew);
      k1.swap(k7);
      ++stats.accepted;
      stats.last_step = h;
      const double fac = en == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(en, -0.2), 0.2, 5.0);
      h = std::min(h * fac, opt.max_step);
    } else {
      ++stats.rejected;
      h *= std::max(0.2, 0.9 * std::pow(en, -0.2));
    }
  }
  if (hint != nullptr) *hint = h;
  return stats;
}

}  // namespace ntoffoli

#endif  // NTOFFOLI_ODE_H_
