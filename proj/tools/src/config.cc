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

#include "ntoffoli/cli/config.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

namespace ntoffoli::cli {

namespace {

constexpr double kTwoPi = 2.0 * 3.14159265358979323846;

struct Quantity {
  double value;
  std::string unit;
};

Quantity split_quantity(const std::string& text) {
  std::istringstream in(text);
  Quantity q{};
  if (!(in >> q.value)) throw ConfigError("expected a number with a unit, got '" + text + "'");
  in >> q.unit;
  std::string extra;
  if (in >> extra) throw ConfigError("trailing text in quantity '" + text + "'");
  if (q.unit.empty()) throw ConfigError("missing unit in '" + text + "'");
  return q;
}

void check_keys(const YAML::Node& node, const std::string& where, const std::set<std::string>& allowed) {
  if (!node.IsMap()) throw ConfigError(where + " must be a mapping");
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    if (!allowed.contains(key)) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

template <typename T>
T scalar(const YAML::Node& n, const std::string& what) {
  try {
    return n.as<T>();
  } catch (const YAML::Exception&) {
    throw ConfigError("bad value for " + what);
  }
}

std::vector<double> grid(const YAML::Node& n, const std::string& what) {
  if (n.IsSequence()) {
    std::vector<double> v;
    for (const auto& e : n) v.push_back(scalar<double>(e, what));
    return v;
  }
  if (n.IsMap()) {
    check_keys(n, what, {"from", "to", "step"});
    const double from = scalar<double>(n["from"], what + ".from");
    const double to = scalar<double>(n["to"], what + ".to");
    const double step = n["step"] ? scalar<double>(n["step"], what + ".step") : 1.0;
    if (!(step > 0.0) || to < from) throw ConfigError(what + " range is empty or has a nonpositive step");
    std::vector<double> v;
    const auto count = static_cast<long>(std::floor((to - from) / step + 1e-9)) + 1;
    for (long k = 0; k < count; ++k) v.push_back(from + static_cast<double>(k) * step);
    return v;
  }
  throw ConfigError(what + " must be a list or a {from, to, step} range");
}

OutputFormat parse_format(const std::string& s) {
  if (s == "csv") return OutputFormat::kCsv;
  if (s == "json") return OutputFormat::kJson;
  throw ConfigError("unknown output format '" + s + "'");
}

GateMode parse_mode(const std::string& s) {
  if (s == "ideal") return GateMode::kIdeal;
  if (s == "driven") return GateMode::kDriven;
  throw ConfigError("unknown gate mode '" + s + "'");
}

}  // namespace

Experiment parse_experiment(const std::string& name) {
  if (name == "sweep-drive") return Experiment::kSweepDrive;
  if (name == "sweep-n") return Experiment::kSweepN;
  if (name == "qec3") return Experiment::kQec3;
  if (name == "steane") return Experiment::kSteane;
  if (name == "synth") return Experiment::kSynth;
  if (name == "table1-check") return Experiment::kTable1Check;
  if (name == "norm-error") return Experiment::kNormError;
  throw ConfigError("unknown experiment '" + name + "'");
}

std::string experiment_name(Experiment e) {
  switch (e) {
    case Experiment::kSweepDrive: return "sweep-drive";
    case Experiment::kSweepN: return "sweep-n";
    case Experiment::kQec3: return "qec3";
    case Experiment::kSteane: return "steane";
    case Experiment::kSynth: return "synth";
    case Experiment::kTable1Check: return "table1-check";
    case Experiment::kNormError: return "norm-error";
  }
  return "?";
}

double parse_frequency(const std::string& text) {
  const Quantity q = split_quantity(text);
  double scale = 0.0;
  if (q.unit == "Hz") scale = 1.0;
  else if (q.unit == "kHz") scale = 1e3;
  else if (q.unit == "MHz") scale = 1e6;
  else if (q.unit == "GHz") scale = 1e9;
  else throw ConfigError("unknown frequency unit '" + q.unit + "'");
  return kTwoPi * q.value * scale;
}

double parse_time(const std::string& text) {
  const Quantity q = split_quantity(text);
  double scale = 0.0;
  if (q.unit == "s") scale = 1.0;
  else if (q.unit == "ms") scale = 1e-3;
  else if (q.unit == "us" || q.unit == "µs" || q.unit == "μs") scale = 1e-6;
  else if (q.unit == "ns") scale = 1e-9;
  else throw ConfigError("unknown time unit '" + q.unit + "'");
  return q.value * scale;
}

ExperimentConfig parse_config(const std::string& yaml_text, const std::string& base_dir) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("cannot parse config: ") + e.what());
  }
  check_keys(root, "config",
             {"experiment", "seed", "threads", "output", "device", "drive", "noise", "sweep_n", "qec", "table",
              "synth"});
  ExperimentConfig c;
  if (!root["experiment"]) throw ConfigError("config needs an experiment");
  c.experiment = parse_experiment(scalar<std::string>(root["experiment"], "experiment"));
  if (root["seed"]) c.seed = scalar<std::uint64_t>(root["seed"], "seed");
  if (root["threads"]) c.threads = scalar<int>(root["threads"], "threads");
  if (const auto o = root["output"]) {
    if (o.IsScalar()) {
      c.output = o.as<std::string>();
    } else {
      check_keys(o, "output", {"path", "format"});
      if (o["path"]) c.output = scalar<std::string>(o["path"], "output.path");
      if (o["format"]) c.format = parse_format(scalar<std::string>(o["format"], "output.format"));
    }
  }
  if (const auto d = root["device"]) {
    check_keys(d, "device", {"controls", "coupling"});
    if (d["controls"]) c.n = scalar<int>(d["controls"], "device.controls");
    if (d["coupling"]) c.coupling = parse_frequency(scalar<std::string>(d["coupling"], "device.coupling"));
  }
  if (const auto d = root["drive"]) {
    check_keys(d, "drive", {"theta", "ratios", "ratio"});
    if (d["theta"]) c.theta = scalar<double>(d["theta"], "drive.theta");
    if (d["ratios"]) c.ratios = grid(d["ratios"], "drive.ratios");
    if (d["ratio"]) c.ratio = scalar<double>(d["ratio"], "drive.ratio");
  }
  if (const auto nz = root["noise"]) {
    check_keys(nz, "noise", {"enabled", "t1", "t2"});
    c.noise.enabled = nz["enabled"] ? scalar<bool>(nz["enabled"], "noise.enabled") : true;
    if (nz["t1"]) c.noise.t1 = parse_time(scalar<std::string>(nz["t1"], "noise.t1"));
    if (nz["t2"]) c.noise.t2 = parse_time(scalar<std::string>(nz["t2"], "noise.t2"));
  }
  if (const auto s = root["sweep_n"]) {
    check_keys(s, "sweep_n", {"n", "gates"});
    if (s["n"]) {
      c.n_values.clear();
      for (double v : grid(s["n"], "sweep_n.n")) c.n_values.push_back(static_cast<int>(std::lround(v)));
    }
    if (s["gates"]) c.gates = scalar<std::vector<std::string>>(s["gates"], "sweep_n.gates");
  }
  if (const auto q = root["qec"]) {
    check_keys(q, "qec", {"mode", "averaging", "samples"});
    if (q["mode"]) c.mode = parse_mode(scalar<std::string>(q["mode"], "qec.mode"));
    if (q["averaging"]) c.averaging = scalar<std::string>(q["averaging"], "qec.averaging");
    if (q["samples"]) c.samples = scalar<std::size_t>(q["samples"], "qec.samples");
  }
  if (const auto t = root["table"]) {
    check_keys(t, "table", {"path", "scan"});
    if (t["path"]) {
      std::filesystem::path p = scalar<std::string>(t["path"], "table.path");
      if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
      c.table_path = p.lexically_normal().string();
    }
    if (const auto s = t["scan"]) {
      check_keys(s, "table.scan", {"from", "to", "points"});
      if (s["from"]) c.scan_lo = scalar<double>(s["from"], "table.scan.from");
      if (s["to"]) c.scan_hi = scalar<double>(s["to"], "table.scan.to");
      if (s["points"]) c.scan_points = scalar<int>(s["points"], "table.scan.points");
    }
  }
  if (const auto s = root["synth"]) {
    check_keys(s, "synth", {"controls", "symmetric", "seeds", "jz", "jx_ratio_max", "alpha_rel", "ratio", "weights"});
    SynthesisTargets& t = c.targets;
    if (s["controls"]) t.n_controls = scalar<int>(s["controls"], "synth.controls");
    if (s["symmetric"]) t.symmetric = scalar<bool>(s["symmetric"], "synth.symmetric");
    if (s["seeds"]) c.synth_seeds = scalar<int>(s["seeds"], "synth.seeds");
    if (const auto j = s["jz"]) {
      check_keys(j, "synth.jz", {"min", "max"});
      if (j["min"]) t.jz_min = parse_frequency(scalar<std::string>(j["min"], "synth.jz.min"));
      if (j["max"]) t.jz_max = parse_frequency(scalar<std::string>(j["max"], "synth.jz.max"));
    }
    if (s["jx_ratio_max"]) t.jx_ratio_max = scalar<double>(s["jx_ratio_max"], "synth.jx_ratio_max");
    if (const auto a = s["alpha_rel"]) {
      check_keys(a, "synth.alpha_rel", {"target", "tolerance"});
      if (a["target"]) t.alpha_rel_target = scalar<double>(a["target"], "synth.alpha_rel.target");
      if (a["tolerance"]) t.alpha_rel_tolerance = scalar<double>(a["tolerance"], "synth.alpha_rel.tolerance");
    }
    if (const auto r = s["ratio"]) {
      check_keys(r, "synth.ratio", {"min", "max"});
      if (r["min"]) t.ratio_min = scalar<double>(r["min"], "synth.ratio.min");
      if (r["max"]) t.ratio_max = scalar<double>(r["max"], "synth.ratio.max");
    }
    if (const auto w = s["weights"]) {
      check_keys(w, "synth.weights", {"jz", "jx", "jxij", "alpha", "ratio"});
      if (w["jz"]) t.w_jz = scalar<double>(w["jz"], "synth.weights.jz");
      if (w["jx"]) t.w_jx = scalar<double>(w["jx"], "synth.weights.jx");
      if (w["jxij"]) t.w_jxij = scalar<double>(w["jxij"], "synth.weights.jxij");
      if (w["alpha"]) t.w_alpha = scalar<double>(w["alpha"], "synth.weights.alpha");
      if (w["ratio"]) t.w_ratio = scalar<double>(w["ratio"], "synth.weights.ratio");
    }
  }
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  const auto dir = std::filesystem::path(path).parent_path();
  return parse_config(ss.str(), dir.empty() ? "." : dir.string());
}

void validate(const ExperimentConfig& c) {
  if (c.threads < 1) throw ConfigError("threads must be at least 1");
  if (c.n < 1) throw ConfigError("device.controls must be at least 1");
  if (!(c.coupling != 0.0) || !std::isfinite(c.coupling)) throw ConfigError("device.coupling must be nonzero");
  if (c.ratios.empty()) throw ConfigError("drive.ratios is empty");
  for (double r : c.ratios) {
    if (!(r > 0.0)) throw ConfigError("J/Omega grid values must be positive");
  }
  if (!(c.ratio > 0.0)) throw ConfigError("drive.ratio must be positive");
  if (c.n_values.empty()) throw ConfigError("sweep_n.n is empty");
  for (int n : c.n_values) {
    if (n < 1 || n > kMaxSweepN) {
      throw ConfigError("sweep_n.n values must lie in 1.." + std::to_string(kMaxSweepN) +
                        " (superoperator size guard)");
    }
  }
  for (const auto& g : c.gates) {
    if (g != "itoffoli" && g != "cnotn") throw ConfigError("unknown gate '" + g + "'");
  }
  if (c.gates.empty()) throw ConfigError("sweep_n.gates is empty");
  if (c.noise.enabled && (!(c.noise.t1 > 0.0) || !(c.noise.t2 > 0.0) || c.noise.t2 > 2.0 * c.noise.t1)) {
    throw ConfigError("noise times must be positive with T2 <= 2 T1");
  }
  if (c.averaging != "stabilizer" && c.averaging != "monte-carlo") {
    throw ConfigError("qec.averaging must be stabilizer or monte-carlo");
  }
  if (c.averaging == "monte-carlo" && c.samples == 0) throw ConfigError("qec.samples must be positive");
  if (c.scan_points < 1 || !(c.scan_lo > 0.0) || c.scan_hi < c.scan_lo) throw ConfigError("bad table.scan range");
  if (c.experiment == Experiment::kTable1Check && c.table_path.empty()) {
    throw ConfigError("table1-check needs table.path");
  }
  if (c.experiment == Experiment::kSynth && c.synth_seeds < 1) throw ConfigError("synth.seeds must be positive");
  if (!c.output.empty()) {
    const auto parent = std::filesystem::path(c.output).parent_path();
    if (!parent.empty() && !std::filesystem::is_directory(parent)) {
      throw ConfigError("output directory does not exist: " + parent.string());
    }
  }
}

}  // namespace ntoffoli::cli
