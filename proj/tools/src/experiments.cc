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

#include "ntoffoli/cli/experiments.h"

#include <cmath>
#include <numeric>
#include <sstream>

#include "ntoffoli/evolution.h"
#include "ntoffoli/fidelity.h"
#include "ntoffoli/gates.h"
#include "ntoffoli/model.h"

namespace ntoffoli::cli {

namespace {

constexpr double kGHz = 2.0 * kPi * 1e9;
constexpr double kMHz = 2.0 * kPi * 1e6;

std::optional<NoiseSpec> noise_for(const ExperimentConfig& cfg, int qubits) {
  if (!cfg.noise.enabled) return std::nullopt;
  return NoiseSpec::uniform(qubits, cfg.noise.t1, cfg.noise.t2);
}

double rabi_for(double coupling, double ratio) { return std::abs(coupling) / ratio; }
double gate_time(double rabi) { return kPi / (2.0 * rabi); }

std::vector<int> targets_of(int n) {
  std::vector<int> t(static_cast<std::size_t>(n));
  std::iota(t.begin(), t.end(), 1);
  return t;
}

struct FidelityPair {
  double unitary;
  std::optional<double> noisy;
};

FidelityPair gate_fidelities(const DeviceModel& dev, const DriveSpec& drive, const Operator& goal, double t,
                             const std::optional<NoiseSpec>& noise) {
  FidelityPair f{driven_gate_fidelity(dev, drive, goal, t), std::nullopt};
  if (noise) f.noisy = driven_gate_fidelity(dev, drive, goal, t, *noise);
  return f;
}

Cell opt_cell(const std::optional<double>& v) { return v ? Cell{*v} : Cell{}; }

}  // namespace

Table run_sweep_drive(const ExperimentConfig& cfg) {
  const int n = cfg.n;
  const auto noise = noise_for(cfg, n + 1);
  const DeviceModel dev = DeviceModel::star(n, cfg.coupling);
  const Operator goal = ideal_itoffoli(n, cfg.theta);
  const auto points = parallel_map<FidelityPair>(cfg.ratios.size(), cfg.threads, [&](std::size_t k) {
    const double rabi = rabi_for(cfg.coupling, cfg.ratios[k]);
    return gate_fidelities(dev, itoffoli_drive(dev, rabi, cfg.theta), goal, gate_time(rabi), noise);
  });
  Table t({"j_over_omega", "gate_time_ns", "fidelity_unitary", "fidelity_noisy"});
  for (std::size_t k = 0; k < points.size(); ++k) {
    const double rabi = rabi_for(cfg.coupling, cfg.ratios[k]);
    t.add_row({cfg.ratios[k], gate_time(rabi) * 1e9, points[k].unitary, opt_cell(points[k].noisy)});
  }
  if (!noise) t.drop_column("fidelity_noisy");
  return t;
}

Table run_sweep_n(const ExperimentConfig& cfg) {
  struct Job {
    int n;
    std::string gate;
  };
  std::vector<Job> jobs;
  for (int n : cfg.n_values) {
    for (const auto& g : cfg.gates) jobs.push_back({n, g});
  }
  const double rabi = rabi_for(cfg.coupling, cfg.ratio);
  const auto points = parallel_map<FidelityPair>(jobs.size(), cfg.threads, [&](std::size_t k) {
    const Job& j = jobs[k];
    const DeviceModel dev = DeviceModel::star(j.n, cfg.coupling);
    const auto noise = noise_for(cfg, j.n + 1);
    if (j.gate == "itoffoli") {
      return gate_fidelities(dev, itoffoli_drive(dev, rabi, cfg.theta), ideal_itoffoli(j.n, cfg.theta),
                             gate_time(rabi), noise);
    }
    const std::vector<double> thetas(static_cast<std::size_t>(j.n), cfg.theta);
    return gate_fidelities(dev, fanout_drive(dev, 0, targets_of(j.n), rabi, thetas), ideal_cnotn(j.n, thetas),
                           gate_time(rabi), noise);
  });
  Table t({"n", "gate", "fidelity_unitary", "fidelity_noisy"});
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    t.add_row({std::int64_t{jobs[k].n}, jobs[k].gate, points[k].unitary, opt_cell(points[k].noisy)});
  }
  if (!cfg.noise.enabled) t.drop_column("fidelity_noisy");
  return t;
}

namespace {

struct Averaged {
  double mean;
  std::optional<double> std_error;
};

Averaged average_over_inputs(const ExperimentConfig& cfg, const std::function<double(const QubitState&)>& f) {
  if (cfg.averaging == "monte-carlo") {
    const MonteCarloEstimate e = bloch_average_monte_carlo(f, cfg.samples, cfg.seed);
    return {e.mean, e.std_error};
  }
  return {bloch_average(f), std::nullopt};
}

}  // namespace

Table run_qec3(const ExperimentConfig& cfg) {
  const std::vector<std::pair<std::string, std::optional<int>>> cases{
      {"none", std::nullopt}, {"q1", 0}, {"q2", 1}, {"q3", 2}};
  const auto points = parallel_map<Averaged>(cases.size(), cfg.threads, [&](std::size_t k) {
    CodeSetup s;
    s.mode = cfg.mode;
    s.noise = noise_for(cfg, 3);
    s.error_site = cases[k].second;
    s.coupling = cfg.coupling;
    s.ratio = cfg.ratio;
    const EncodingMap map = bitflip_map(s);
    return average_over_inputs(cfg, [&](const QubitState& psi) { return bitflip_fidelity(map, psi); });
  });
  const Schedule sched = bitflip_schedule(cfg.coupling, cfg.ratio);
  Table t({"error_case", "j_over_omega", "gate_time_ns", "fidelity", "std_error"});
  for (std::size_t k = 0; k < cases.size(); ++k) {
    t.add_row({cases[k].first, cfg.ratio, sched.window * static_cast<double>(sched.drive_windows()) * 1e9,
               points[k].mean, opt_cell(points[k].std_error)});
  }
  if (cfg.averaging != "monte-carlo") t.drop_column("std_error");
  return t;
}

Table run_steane(const ExperimentConfig& cfg) {
  const auto points = parallel_map<Averaged>(cfg.ratios.size(), cfg.threads, [&](std::size_t k) {
    CodeSetup s;
    s.mode = cfg.mode;
    s.noise = noise_for(cfg, 7);
    s.coupling = cfg.coupling;
    s.ratio = cfg.ratios[k];
    const EncodingMap map = steane_map(s);
    return average_over_inputs(cfg, [&](const QubitState& psi) { return steane_fidelity(map, psi); });
  });
  Table t({"j_over_omega", "gate_time_ns", "fidelity", "std_error"});
  for (std::size_t k = 0; k < points.size(); ++k) {
    const Schedule sched = steane_schedule(cfg.coupling, cfg.ratios[k]);
    t.add_row({cfg.ratios[k], sched.window * static_cast<double>(sched.drive_windows()) * 1e9, points[k].mean,
               opt_cell(points[k].std_error)});
  }
  if (cfg.averaging != "monte-carlo") t.drop_column("std_error");
  return t;
}

namespace {

const std::vector<std::string> kTableColumns{"id",         "e0_ghz",     "ei_ghz",   "ez_ghz",    "c0_ff",
                                             "ci_ff",      "cz_ff",      "omega0_ghz", "omegai_ghz", "jz_mhz",
                                             "jx_mhz",     "jxij_mhz",   "alpha0_pct", "alphai_pct", "ratio0",
                                             "ratioi"};

std::vector<Cell> table_cells(std::int64_t id, const CircuitParams& p, const GateParams& g) {
  const double jxij = g.jxij.rows() > 1 ? g.jxij(0, 1) : 0.0;
  return {id,
          p.e0() / kGHz,
          p.ei()[0] / kGHz,
          p.ezi()[0] / kGHz,
          p.c0(),
          p.ci()[0],
          p.czi()[0],
          g.omega0 / kGHz,
          g.omegai[0] / kGHz,
          g.jz[0] / kMHz,
          g.jx[0] / kMHz,
          jxij / kMHz,
          100.0 * g.alpha_rel0,
          100.0 * g.alpha_reli[0],
          g.ratio0,
          g.ratioi[0]};
}

}  // namespace

ExperimentResult run_synth(const ExperimentConfig& cfg) {
  const SynthesisResult r = optimize_circuit(cfg.targets, cfg.synth_seeds, cfg.seed, cfg.threads);
  std::vector<std::string> cols = kTableColumns;
  cols.push_back("cost");
  cols.push_back("seed_index");
  ExperimentResult out{Table(cols), !r.feasible.empty(), r.diagnostic};
  std::int64_t id = 1;
  for (const auto& c : r.feasible) {
    auto cells = table_cells(id++, c.params, c.gate);
    cells.push_back(c.cost);
    cells.push_back(static_cast<std::int64_t>(c.seed_index));
    out.table.add_row(std::move(cells));
  }
  return out;
}

std::vector<QuantityCheck> check_table_row(const TableRow& row) {
  const GateParams g = derive_gate_params(row.circuit(2));
  // Relative tolerances, widened to half a unit of the printed last digit.
  auto check = [](std::string name, double derived, double printed, double rel, double floor) {
    const double tol = std::max(rel * std::abs(printed), floor);
    return QuantityCheck{std::move(name), derived, printed, tol, std::abs(derived - printed) <= tol};
  };
  return {
      check("omega0_ghz", g.omega0 / kGHz, row.omega0, 0.01, 0.05),
      check("omegai_ghz", g.omegai[0] / kGHz, row.omegai, 0.01, 0.05),
      check("jz_mhz", g.jz[0] / kMHz, row.jz, 0.02, 0.1),
      check("jx_mhz", g.jx[0] / kMHz, row.jx, 0.02, 0.1),
      check("jxij_mhz", g.jxij(0, 1) / kMHz, row.jxij, 0.02, 0.1),
      check("alpha0_pct", 100.0 * g.alpha_rel0, row.alpha0, 0.0, 0.1),
      check("alphai_pct", 100.0 * g.alpha_reli[0], row.alphai, 0.0, 0.1),
      check("ratio0", g.ratio0, row.ratio0, 0.02, 0.05),
      check("ratioi", g.ratioi[0], row.ratioi, 0.02, 0.05),
  };
}

GateScan scan_table_gate(const TableRow& row, double lo, double hi, int points, const std::optional<NoiseSpec>& noise) {
  const GateParams g = derive_gate_params(row.circuit(2));
  const ModelBridge bridge = gate_model_bridge(g, 2);
  const double rabi = std::abs(g.jz[0]) / 8.0;
  const DriveSpec drive = itoffoli_drive(bridge.device, rabi);
  const Operator goal = ideal_itoffoli(2);
  const double t_gate = gate_time(rabi);
  GateScan best{-1.0, 0.0, t_gate};
  for (int k = 0; k < points; ++k) {
    const double frac = points == 1 ? lo : lo + (hi - lo) * k / (points - 1);
    const double t = frac * t_gate;
    const double f = noise ? driven_gate_fidelity(bridge.device, drive, goal, t, *noise)
                           : driven_gate_fidelity(bridge.device, drive, goal, t);
    if (f > best.peak_fidelity) best = {f, t, t_gate};
  }
  return best;
}

Table run_table1_check(const ExperimentConfig& cfg) {
  const std::vector<TableRow> rows = load_table_rows(cfg.table_path);
  if (rows.empty()) throw ConfigError("table file has no rows: " + cfg.table_path);
  const auto noise = noise_for(cfg, 3);
  struct RowResult {
    std::vector<QuantityCheck> checks;
    GateScan unitary;
    std::optional<GateScan> noisy;
  };
  const auto results = parallel_map<RowResult>(rows.size(), cfg.threads, [&](std::size_t k) {
    RowResult r{check_table_row(rows[k]),
                scan_table_gate(rows[k], cfg.scan_lo, cfg.scan_hi, cfg.scan_points), std::nullopt};
    if (noise) r.noisy = scan_table_gate(rows[k], cfg.scan_lo, cfg.scan_hi, cfg.scan_points, noise);
    return r;
  });
  std::vector<std::string> cols{"id"};
  for (const auto& c : results.front().checks) {
    cols.push_back(c.name + "_derived");
    cols.push_back(c.name + "_printed");
    cols.push_back(c.name + "_ok");
  }
  for (const char* c : {"all_ok", "gate_time_ns", "peak_time_ns", "fidelity_unitary", "peak_time_noisy_ns",
                        "fidelity_noisy"}) {
    cols.emplace_back(c);
  }
  Table t(cols);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const RowResult& r = results[k];
    std::vector<Cell> cells{std::int64_t{rows[k].id}};
    bool all = true;
    for (const auto& c : r.checks) {
      cells.emplace_back(c.derived);
      cells.emplace_back(c.printed);
      cells.emplace_back(std::int64_t{c.ok});
      all = all && c.ok;
    }
    cells.emplace_back(std::int64_t{all});
    cells.emplace_back(r.unitary.gate_time * 1e9);
    cells.emplace_back(r.unitary.peak_time * 1e9);
    cells.emplace_back(r.unitary.peak_fidelity);
    cells.push_back(r.noisy ? Cell{r.noisy->peak_time * 1e9} : Cell{});
    cells.push_back(r.noisy ? Cell{r.noisy->peak_fidelity} : Cell{});
    t.add_row(std::move(cells));
  }
  if (!noise) {
    t.drop_column("peak_time_noisy_ns");
    t.drop_column("fidelity_noisy");
  }
  return t;
}

Table run_norm_error(const ExperimentConfig& cfg) {
  Table t({"n", "j_over_omega", "norm_error", "norm_error_closed_form", "fidelity_unitary"});
  for (int n : cfg.n_values) {
    for (double r : cfg.ratios) {
      t.add_row({std::int64_t{n}, r, max_subspace_norm(n, r, cfg.theta),
                 std::sqrt(per_subspace_norm_squared_closed_form(r)), itoffoli_report(n, r).process_fidelity});
    }
  }
  return t;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  auto ok = [](Table t) { return ExperimentResult{std::move(t), true, {}}; };
  switch (cfg.experiment) {
    case Experiment::kSweepDrive: return ok(run_sweep_drive(cfg));
    case Experiment::kSweepN: return ok(run_sweep_n(cfg));
    case Experiment::kQec3: return ok(run_qec3(cfg));
    case Experiment::kSteane: return ok(run_steane(cfg));
    case Experiment::kSynth: return run_synth(cfg);
    case Experiment::kTable1Check: return ok(run_table1_check(cfg));
    case Experiment::kNormError: return ok(run_norm_error(cfg));
  }
  throw ConfigError("unhandled experiment");
}

}  // namespace ntoffoli::cli
