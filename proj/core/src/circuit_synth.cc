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

#include "ntoffoli/circuit_synth.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "ntoffoli/fidelity.h"
#include "ntoffoli/simplex.h"

namespace ntoffoli {

namespace {

constexpr double kElementaryCharge = 1.602176634e-19;  // C
constexpr double kHbar = 1.054571817e-34;              // J s

double log_excess(double x, double hi) { return x > hi ? std::log(x / hi) : 0.0; }
double log_shortfall(double x, double lo) { return x < lo ? std::log(lo / x) : 0.0; }

}  // namespace

double charging_energy_per_inverse_ff() { return kElementaryCharge * kElementaryCharge / (2.0 * kHbar) * 1e15; }

CircuitParams::CircuitParams(double e0, std::vector<double> ei, std::vector<double> ezi, double c0,
                             std::vector<double> ci, std::vector<double> czi)
    : e0_(e0), ei_(std::move(ei)), ezi_(std::move(ezi)), c0_(c0), ci_(std::move(ci)), czi_(std::move(czi)) {
  const std::size_t n = ei_.size();
  if (n == 0) throw std::invalid_argument("circuit needs at least one control");
  if (ezi_.size() != n || ci_.size() != n || czi_.size() != n) {
    throw std::invalid_argument("circuit parameter lists differ in length");
  }
  if (!(e0_ >= 0.0) || !(c0_ > 0.0)) throw std::invalid_argument("invalid target parameters");
  for (std::size_t i = 0; i < n; ++i) {
    if (!(ei_[i] >= 0.0) || !(ezi_[i] > 0.0) || !(ci_[i] > 0.0) || !(czi_[i] >= 0.0)) {
      throw std::invalid_argument("invalid control or coupling parameters");
    }
  }
}

CircuitParams CircuitParams::symmetric(int n, double e0, double ei, double ez, double c0, double ci, double cz) {
  if (n < 1) throw std::invalid_argument("circuit needs at least one control");
  const auto k = static_cast<std::size_t>(n);
  return CircuitParams(e0, std::vector<double>(k, ei), std::vector<double>(k, ez), c0, std::vector<double>(k, ci),
                       std::vector<double>(k, cz));
}

RealMatrix capacitance_matrix(const CircuitParams& p) {
  const int n = p.n_controls();
  RealMatrix k = RealMatrix::Zero(n + 1, n + 1);
  k(0, 0) = p.c0();
  for (int i = 1; i <= n; ++i) {
    const double cz = p.czi()[i - 1];
    k(0, 0) += cz;
    k(i, i) = p.ci()[i - 1] + cz;
    k(0, i) = -cz;
    k(i, 0) = -cz;
  }
  return k;
}

GateParams derive_gate_params(const CircuitParams& p) {
  const int n = p.n_controls();
  const RealMatrix k = capacitance_matrix(p);
  Eigen::FullPivLU<RealMatrix> lu(k);
  if (!lu.isInvertible()) throw std::invalid_argument("capacitance matrix is singular");
  GateParams g;
  g.kinv = 8.0 * charging_energy_per_inverse_ff() * lu.inverse();
  g.charging = g.kinv.diagonal() / 8.0;
  g.josephson.resize(n + 1);
  g.josephson(0) = p.e0();
  for (int i = 1; i <= n; ++i) {
    g.josephson(i) = p.ei()[i - 1] + p.ezi()[i - 1];
    g.josephson(0) += p.ezi()[i - 1];
  }
  g.zeta = (g.kinv.diagonal().array() / g.josephson.array()).sqrt();
  const double z0 = g.zeta(0);
  auto plasma = [&](int j) { return std::sqrt(8.0 * g.charging(j) * g.josephson(j)) + 0.5 * g.charging(j); };
  g.omega0 = plasma(0);
  for (int i = 1; i <= n; ++i) {
    const double ez = p.ezi()[i - 1], zi = g.zeta(i), s = std::sqrt(zi * z0);
    g.omega0 += ez * zi * z0 / 6.0;
    g.omegai.push_back(plasma(i) + ez * zi * z0 / 6.0);
    g.jz.push_back(-ez * zi * z0 / 12.0);
    g.jx.push_back(g.kinv(i, 0) / s - ez * s + 0.25 * ez * (zi + z0) * s);
  }
  g.jxij = RealMatrix::Zero(n, n);
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      if (i != j) g.jxij(i - 1, j - 1) = g.kinv(i, j) / std::sqrt(g.zeta(i) * g.zeta(j));
    }
  }
  g.alpha0 = 0.5 * g.charging(0);
  g.alpha_rel0 = -g.alpha0 / g.omega0;
  g.ratio0 = g.josephson(0) / g.charging(0);
  for (int i = 1; i <= n; ++i) {
    g.alphai.push_back(0.5 * g.charging(i));
    g.alpha_reli.push_back(-g.alphai.back() / g.omegai[i - 1]);
    g.ratioi.push_back(g.josephson(i) / g.charging(i));
  }
  return g;
}

double DriveDerivation::beta(double t) const {
  return rabi * (std::cos(theta) * std::cos(frequency * t) - std::sin(theta) * std::sin(frequency * t));
}

namespace {

double drive_coupling(const CircuitParams& p, int target) {
  if (target < 0 || target > p.n_controls()) throw std::invalid_argument("drive target out of range");
  const GateParams g = derive_gate_params(p);
  return g.kinv(target, target) / std::sqrt(2.0 * g.zeta(target));
}

}  // namespace

DriveDerivation derive_drive(const CircuitParams& p, double amplitude, double drive_freq, double theta, int target) {
  DriveDerivation d;
  d.rabi = -amplitude * drive_freq * drive_coupling(p, target);
  d.frequency = drive_freq;
  d.theta = theta;
  return d;
}

double solve_drive_amplitude(const CircuitParams& p, double rabi, double drive_freq, int target) {
  if (drive_freq == 0.0) throw std::invalid_argument("drive frequency must be nonzero");
  return -rabi / (drive_freq * drive_coupling(p, target));
}

ModelBridge gate_model_bridge(const GateParams& g, int n) {
  if (n < 1 || static_cast<int>(g.jz.size()) != n || static_cast<int>(g.omegai.size()) != n) {
    throw std::invalid_argument("gate parameters do not match the number of controls");
  }
  std::vector<double> omega{g.omega0};
  omega.insert(omega.end(), g.omegai.begin(), g.omegai.end());
  RealMatrix j = RealMatrix::Zero(n + 1, n + 1);
  for (int i = 1; i <= n; ++i) j(0, i) = j(i, 0) = g.jz[i - 1];
  ModelBridge b{DeviceModel(std::move(omega), std::move(j), std::max(n, DeviceModel::kDefaultMaxControls)),
                g.jx, {}, g.jxij};
  for (int i = 0; i < n; ++i) {
    const double gap = std::abs(g.omegai[i] - g.omega0);
    b.residual_ratio.push_back(gap > 0.0 ? std::abs(g.jx[i]) / gap : std::numeric_limits<double>::infinity());
  }
  return b;
}

namespace {

struct Violations {
  double jz = 0, jx = 0, jxij = 0, alpha = 0, ratio = 0;
};

Violations violations(const GateParams& g, const SynthesisTargets& t) {
  Violations v;
  auto alpha_miss = [&](double a) {
    const double miss = std::max(0.0, std::abs(a - t.alpha_rel_target) - t.alpha_rel_tolerance);
    return miss / std::abs(t.alpha_rel_target);
  };
  auto ratio_miss = [&](double r) { return log_excess(r, t.ratio_max) + log_shortfall(r, t.ratio_min); };
  v.alpha += std::pow(alpha_miss(g.alpha_rel0), 2);
  v.ratio += std::pow(ratio_miss(g.ratio0), 2);
  const std::size_t n = g.jz.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double jz = std::abs(g.jz[i]);
    v.jz += std::pow(log_excess(jz, t.jz_max) + log_shortfall(jz, t.jz_min), 2);
    const double gap = std::abs(g.omegai[i] - g.omega0);
    const double rx = gap > 0.0 ? std::abs(g.jx[i]) / gap : 1e6;
    v.jx += std::pow(log_excess(rx, t.jx_ratio_max), 2);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const double x = std::abs(g.jxij(static_cast<Index>(i), static_cast<Index>(j)));
      if (x > 0.0) v.jxij += std::pow(log_excess(x, jz), 2);
    }
    v.alpha += std::pow(alpha_miss(g.alpha_reli[i]), 2);
    v.ratio += std::pow(ratio_miss(g.ratioi[i]), 2);
  }
  return v;
}

double weighted(const Violations& v, const SynthesisTargets& t) {
  return t.w_jz * v.jz + t.w_jx * v.jx + t.w_jxij * v.jxij + t.w_alpha * v.alpha + t.w_ratio * v.ratio;
}

// Keeps the search inside fabricable values: energies and capacitances
// below the upper edge of the start box, capacitances above its lower edge.
double box_penalty(const CircuitParams& p, const SynthesisTargets& t) {
  double s = std::pow(log_excess(p.e0(), t.energy_hi), 2) + std::pow(log_excess(p.c0(), t.cap_hi), 2) +
             std::pow(log_shortfall(p.c0(), t.cap_lo), 2);
  for (int i = 0; i < p.n_controls(); ++i) {
    s += std::pow(log_excess(p.ei()[i], t.energy_hi), 2) + std::pow(log_excess(p.ezi()[i], t.energy_hi), 2);
    s += std::pow(log_excess(p.ci()[i], t.cap_hi), 2) + std::pow(log_shortfall(p.ci()[i], t.cap_lo), 2);
    s += std::pow(log_excess(p.czi()[i], t.cz_hi), 2);
  }
  return s;
}

Eigen::VectorXd to_vector(const CircuitParams& p, bool symmetric) {
  const int n = p.n_controls();
  auto lg = [](double x) { return std::log(std::max(x, 1e-300)); };
  if (symmetric) {
    Eigen::VectorXd x(6);
    x << lg(p.e0()), lg(p.ei()[0]), lg(p.ezi()[0]), lg(p.c0()), lg(p.ci()[0]), lg(p.czi()[0]);
    return x;
  }
  Eigen::VectorXd x(2 + 4 * n);
  x(0) = lg(p.e0());
  x(1) = lg(p.c0());
  for (int i = 0; i < n; ++i) {
    x(2 + 4 * i) = lg(p.ei()[i]);
    x(3 + 4 * i) = lg(p.ezi()[i]);
    x(4 + 4 * i) = lg(p.ci()[i]);
    x(5 + 4 * i) = lg(p.czi()[i]);
  }
  return x;
}

CircuitParams from_vector(const Eigen::VectorXd& x, int n, bool symmetric) {
  const Eigen::VectorXd e = x.array().exp();
  if (symmetric) return CircuitParams::symmetric(n, e(0), e(1), e(2), e(3), e(4), e(5));
  std::vector<double> ei, ez, ci, cz;
  for (int i = 0; i < n; ++i) {
    ei.push_back(e(2 + 4 * i));
    ez.push_back(e(3 + 4 * i));
    ci.push_back(e(4 + 4 * i));
    cz.push_back(e(5 + 4 * i));
  }
  return CircuitParams(e(0), ei, ez, e(1), ci, cz);
}

double cost_of_vector(const Eigen::VectorXd& x, const SynthesisTargets& t) {
  if (!x.allFinite() || x.cwiseAbs().maxCoeff() > 200.0) return 1e12;
  try {
    return synthesis_cost(from_vector(x, t.n_controls, t.symmetric), t);
  } catch (const std::invalid_argument&) {
    return 1e12;
  }
}

SynthesisCandidate descend(const Eigen::VectorXd& x0, const SynthesisTargets& t, std::size_t seed_index) {
  NelderMeadOptions opt;
  opt.initial_step = 0.3;
  opt.max_evaluations = 6000;
  NelderMeadResult r = nelder_mead([&](const Eigen::VectorXd& x) { return cost_of_vector(x, t); }, x0, opt);
  const CircuitParams p = from_vector(r.x, t.n_controls, t.symmetric);
  return {p, derive_gate_params(p), r.value, seed_index};
}

}  // namespace

double synthesis_cost(const CircuitParams& p, const SynthesisTargets& t) {
  return weighted(violations(derive_gate_params(p), t), t) + box_penalty(p, t);
}

bool is_feasible(const GateParams& g, const SynthesisTargets& t) {
  const Violations v = violations(g, t);
  return v.jz + v.jx + v.jxij + v.alpha + v.ratio <= t.feasible_cost;
}

SynthesisCandidate refine_circuit(const CircuitParams& start, const SynthesisTargets& targets) {
  SynthesisTargets t = targets;
  t.n_controls = start.n_controls();
  return descend(to_vector(start, t.symmetric), t, 0);
}

SynthesisResult optimize_circuit(const SynthesisTargets& targets, int seeds, std::uint64_t rng_seed, int threads) {
  if (seeds < 1) throw std::invalid_argument("need at least one seed");
  if (targets.n_controls < 1) throw std::invalid_argument("need at least one control");
  const int dims = targets.symmetric ? 6 : 2 + 4 * targets.n_controls;
  std::vector<std::optional<SynthesisCandidate>> found(static_cast<std::size_t>(seeds));
  std::vector<double> best(static_cast<std::size_t>(seeds), std::numeric_limits<double>::infinity());
  auto run_seed = [&](int k) {
    auto rng = substream(rng_seed, static_cast<std::uint64_t>(k));
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto draw = [&](double lo, double hi) { return std::log(lo) + u(rng) * (std::log(hi) - std::log(lo)); };
    Eigen::VectorXd x(dims);
    auto fill_control = [&](int base) {
      x(base) = draw(targets.energy_lo, targets.energy_hi);
      x(base + 1) = draw(targets.energy_lo, targets.energy_hi);
      x(base + 2) = draw(targets.cap_lo, targets.cap_hi);
      x(base + 3) = draw(targets.cz_lo, targets.cz_hi);
    };
    if (targets.symmetric) {
      x(0) = draw(targets.energy_lo, targets.energy_hi);
      x(1) = draw(targets.energy_lo, targets.energy_hi);
      x(2) = draw(targets.energy_lo, targets.energy_hi);
      x(3) = draw(targets.cap_lo, targets.cap_hi);
      x(4) = draw(targets.cap_lo, targets.cap_hi);
      x(5) = draw(targets.cz_lo, targets.cz_hi);
    } else {
      x(0) = draw(targets.energy_lo, targets.energy_hi);
      x(1) = draw(targets.cap_lo, targets.cap_hi);
      for (int i = 0; i < targets.n_controls; ++i) fill_control(2 + 4 * i);
    }
    SynthesisCandidate c = descend(x, targets, static_cast<std::size_t>(k));
    best[static_cast<std::size_t>(k)] = c.cost;
    if (c.cost <= targets.feasible_cost && is_feasible(c.gate, targets)) found[static_cast<std::size_t>(k)] = std::move(c);
  };
  const int workers = std::max(1, std::min(threads, seeds));
  if (workers == 1) {
    for (int k = 0; k < seeds; ++k) run_seed(k);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (int k = w; k < seeds; k += workers) run_seed(k);
      });
    }
    for (auto& th : pool) th.join();
  }
  SynthesisResult res;
  res.seeds_run = static_cast<std::size_t>(seeds);
  res.best_cost = *std::min_element(best.begin(), best.end());
  for (auto& c : found) {
    if (c) res.feasible.push_back(std::move(*c));
  }
  if (res.feasible.empty()) {
    std::ostringstream os;
    os << "no feasible circuit after " << seeds << " seeds; lowest cost " << res.best_cost;
    res.diagnostic = os.str();
  } else {
    res.diagnostic = std::to_string(res.feasible.size()) + " feasible of " + std::to_string(seeds) + " seeds";
  }
  return res;
}

CircuitParams TableRow::circuit(int n_controls) const {
  const double ghz = 2.0 * kPi * 1e9;
  return CircuitParams::symmetric(n_controls, e0 * ghz, ei * ghz, ez * ghz, c0, ci, cz);
}

std::vector<TableRow> parse_table_rows(std::istream& in) {
  std::vector<TableRow> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#' || line.compare(first, 2, "id") == 0) continue;
    std::istringstream ls(line);
    TableRow r;
    ls >> r.id >> r.e0 >> r.ei >> r.ez >> r.c0 >> r.ci >> r.cz >> r.omega0 >> r.omegai >> r.jz >> r.jx >> r.jxij >>
        r.alpha0 >> r.alphai >> r.ratio0 >> r.ratioi;
    if (!ls) throw std::runtime_error("malformed table row at line " + std::to_string(lineno));
    rows.push_back(r);
  }
  return rows;
}

std::vector<TableRow> load_table_rows(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open table file " + path);
  return parse_table_rows(f);
}

}  // namespace ntoffoli
