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

#ifndef NTOFFOLI_SIMPLEX_H_
#define NTOFFOLI_SIMPLEX_H_

#include <cstddef>
#include <functional>

#include <Eigen/Dense>

namespace ntoffoli {

struct NelderMeadOptions {
  double initial_step = 0.5;
  std::size_t max_evaluations = 5000;
  double ftol = 1e-14;  // spread of simplex values
  double xtol = 1e-9;   // simplex diameter
};

struct NelderMeadResult {
  Eigen::VectorXd x;
  double value = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
};

// Downhill simplex with the usual reflection/expansion/contraction/shrink
// coefficients (1, 2, 1/2, 1/2).
NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f, const Eigen::VectorXd& x0,
                             const NelderMeadOptions& options = {});

}  // namespace ntoffoli

#endif  // NTOFFOLI_SIMPLEX_H_
