// Copyright 2026 The Semigroup Forge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sgforge/io.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>

namespace {

using namespace sgforge;
using io::json;

constexpr std::uint64_t kDefaultSeed = 0x5EED0000;
constexpr int kExitVerdict = 2;

std::vector<double> parse_times_csv(const std::string& csv) {
  std::vector<double> out;
  std::istringstream in(csv);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stod(item));
  }
  if (out.empty()) throw io::parse_error("--times: expected a comma-separated list");
  return out;
}

// --- check ---------------------------------------------------------------------

struct CheckOptions {
  std::string spec_path;
  double tolerance = 1e-9;
  std::string times_csv = "0.1,0.5,1.0,2.0";
  int budget = 64;
  std::uint64_t seed = kDefaultSeed;
  std::vector<std::string> require;
};

json gkls_verdict_json(const io::RealizedGenerator& gen, double tolerance) {
  json v;
  std::optional<GksGenerator> gks = gen.gks;
  if (!gks && gen.lindblad) gks = lindblad_to_gks(*gen.lindblad, gell_mann_basis(gen.dim));
  if (!gks) {
    // Superoperator-only input: the coefficient form exists exactly when the
    // generator preserves trace and Hermiticity.
    try {
      gks = gks_from_superop(gen.superop, gell_mann_basis(gen.dim), tolerance);
    } catch (const error& e) {
      v["applicable"] = false;
      v["pass"] = false;
      v["reason"] = e.what();
      return v;
    }
  }
  GklsVerdict verdict = is_gkls(*gks, tolerance);
  v["applicable"] = true;
  v["pass"] = verdict.passes;
  v["min_eigenvalue"] = verdict.min_eigenvalue;
  return v;
}

int run_check(const CheckOptions& opt) {
  io::RealizedGenerator gen = io::load_generator(opt.spec_path);
  std::vector<double> times = parse_times_csv(opt.times_csv);
  const double scale = std::max(1.0, gen.superop.mat.norm());

  json report;
  report["format_version"] = 1;
  report["tool_version"] = version_string;
  report["fingerprint"] = io::fingerprint(gen.document);
  report["seed"] = opt.seed;
  report["tolerances"] = {{"verdict", opt.tolerance}, {"scale", scale}};
  report["sample_times"] = times;

  json verdicts;
  double trace_defect = gen.superop.trace_defect();
  verdicts["trace_preserving"] = {{"pass", trace_defect <= opt.tolerance * scale},
                                  {"defect", trace_defect}};
  double herm_defect = gen.superop.hermiticity_preservation_defect();
  verdicts["hermiticity_preserving"] = {{"pass", herm_defect <= opt.tolerance * scale},
                                        {"defect", herm_defect}};
  verdicts["is_gkls"] = gkls_verdict_json(gen, opt.tolerance);

  json cp = json::array();
  bool cp_all = true;
  for (const auto& v : cp_along_trajectory(gen.superop, times, opt.tolerance)) {
    cp.push_back({{"t", v.t},
                  {"min_choi_eigenvalue", v.min_choi_eigenvalue},
                  {"pass", v.completely_positive}});
    cp_all = cp_all && v.completely_positive;
  }
  verdicts["cp_of_exp_tL"] = std::move(cp);

  PositivityCheckResult pos = kossakowski_positivity_check(gen.superop, opt.budget, opt.seed);
  verdicts["kossakowski_positivity"] = {
      {"pass", pos.min_value >= -opt.tolerance * scale},
      {"min_value", pos.min_value},
      {"trace_sum_defect", pos.trace_sum_defect}};

  double abscissa = spectral_abscissa(gen.superop);
  verdicts["spectral_abscissa"] = {{"pass", abscissa <= opt.tolerance * scale},
                                   {"value", abscissa}};
  report["verdicts"] = std::move(verdicts);

  std::cout << report.dump(2) << "\n";

  bool ok = true;
  for (const auto& req : opt.require) {
    const json& v = report["verdicts"];
    if (req == "trace") {
      ok = ok && v["trace_preserving"]["pass"].get<bool>();
    } else if (req == "hermiticity") {
      ok = ok && v["hermiticity_preserving"]["pass"].get<bool>();
    } else if (req == "gkls") {
      ok = ok && v["is_gkls"]["pass"].get<bool>();
    } else if (req == "cp") {
      for (const auto& e : v["cp_of_exp_tL"]) ok = ok && e["pass"].get<bool>();
    } else if (req == "positivity") {
      ok = ok && v["kossakowski_positivity"]["pass"].get<bool>();
    } else if (req == "spectral") {
      ok = ok && v["spectral_abscissa"]["pass"].get<bool>();
    } else {
      throw io::parse_error("--require: unknown verdict '" + req + "'");
    }
  }
  return ok ? 0 : kExitVerdict;
}

// --- evolve --------------------------------------------------------------------

struct EvolveOptions {
  std::string spec_path;
  std::string state_path;
  double t0 = 0.0;
  double t1 = 1.0;
  int steps = 100;
  std::string method = "exact";
  double rtol = 1e-9;
  double atol = 1e-12;
};

int run_evolve(const EvolveOptions& opt) {
  io::RealizedGenerator gen = io::load_generator(opt.spec_path);
  Matrix rho0 = io::load_state(opt.state_path);
  if (rho0.rows() != gen.dim)
    throw io::parse_error("state dimension does not match the generator");
  if (std::abs(rho0.trace() - Complex(1.0)) > 1e-8)
    throw io::parse_error("input is not a state: trace differs from 1 beyond 1e-8");
  if (hermiticity_defect(rho0) > 1e-8)
    throw io::parse_error("input is not a state: not Hermitian within 1e-8");
  if (min_eigenvalue(rho0) < -1e-8)
    throw io::parse_error("input is not a state: negative eigenvalue beyond 1e-8");

  if (opt.t1 < opt.t0) throw io::parse_error("--t1 must be >= --t0");
  std::vector<double> times;
  if (opt.t1 == opt.t0) {
    times = {opt.t0};
  } else {
    if (opt.steps < 1) throw io::parse_error("--steps must be >= 1");
    double dt = (opt.t1 - opt.t0) / opt.steps;
    for (int k = 0; k <= opt.steps; ++k) times.push_back(opt.t0 + k * dt);
  }

  Trajectory traj;
  if (opt.method == "exact") {
    traj = evolve_exact(gen.superop, rho0, times);
  } else if (opt.method == "ode") {
    traj = evolve_ode(gen.superop, rho0, times, opt.rtol, opt.atol);
  } else {
    throw io::parse_error("--method must be 'exact' or 'ode'");
  }
  std::cout << io::trajectory_to_csv(traj);
  return 0;
}

// --- convert -------------------------------------------------------------------

struct ConvertOptions {
  std::string spec_path;
  std::string target;
};

GksGenerator require_gks_form(const io::RealizedGenerator& gen) {
  if (gen.gks) return *gen.gks;
  if (gen.lindblad) return lindblad_to_gks(*gen.lindblad, gell_mann_basis(gen.dim));
  return gks_from_superop(gen.superop, gell_mann_basis(gen.dim));
}

int run_convert(const ConvertOptions& opt) {
  io::RealizedGenerator gen = io::load_generator(opt.spec_path);
  std::string target = opt.target;
  double at_time = 0.0;
  bool timed = false;
  if (auto at = target.find('@'); at != std::string::npos) {
    at_time = std::stod(target.substr(at + 1));
    target = target.substr(0, at);
    timed = true;
  }

  try {
    if (target == "gks") {
      std::cout << io::gks_spec_json(require_gks_form(gen)).dump(2) << "\n";
    } else if (target == "lindblad") {
      std::cout << io::lindblad_spec_json(gks_to_lindblad(require_gks_form(gen))).dump(2)
                << "\n";
    } else if (target == "kraus" && timed) {
      Superoperator map{gen.dim, expm(at_time * gen.superop.mat)};
      KrausSet k = kraus_from_choi(choi_of_superop(map));
      json doc;
      doc["format_version"] = 1;
      doc["kind"] = "kraus";
      doc["dim"] = gen.dim;
      doc["time"] = at_time;
      json ops = json::array();
      for (const auto& op : k.ops) ops.push_back(io::matrix_to_json(op));
      doc["operators"] = std::move(ops);
      doc["trace_preservation_defect"] = k.trace_preservation_defect();
      std::cout << doc.dump(2) << "\n";
    } else if (target == "choi" && timed) {
      Superoperator map{gen.dim, expm(at_time * gen.superop.mat)};
      ChoiMatrix c = choi_of_superop(map);
      json doc;
      doc["format_version"] = 1;
      doc["kind"] = "choi";
      doc["dim"] = gen.dim;
      doc["time"] = at_time;
      doc["matrix"] = io::matrix_to_json(c.mat);
      std::cout << doc.dump(2) << "\n";
    } else {
      throw io::parse_error("--to must be gks, lindblad, kraus@t or choi@t");
    }
  } catch (const not_positive_error& e) {
    std::cerr << "conversion failed: " << e.what() << "\n";
    return kExitVerdict;
  } catch (const error& e) {
    if (dynamic_cast<const io::parse_error*>(&e) != nullptr) throw;
    std::cerr << "conversion failed: " << e.what() << "\n";
    return kExitVerdict;
  }
  return 0;
}

// --- zoo -----------------------------------------------------------------------

struct ZooEntry {
  const char* name;
  const char* summary;
  const char* params;
};

constexpr ZooEntry kZoo[] = {
    {"pauli", "diagonal qubit family sum_k gamma_k (sigma_k rho sigma_k - rho)",
     "gamma1=1 gamma2=1 gamma3=1"},
    {"landau", "damped mode, single jump sqrt(gamma) a", "truncation=6 gamma=1"},
    {"optical_potential", "absorption -i[H,rho] - (V rho + rho V), trace decays",
     "v1=0.5 v2=0.25 omega0=1"},
    {"lamb", "two-level decay without refilling, trace decays",
     "gamma1=1 gamma2=0.5 omega0=1"},
    {"cured_lamb", "two-level decay completed to a trace-preserving channel",
     "gamma1=1 gamma2=0.5 omega0=1"},
    {"laser", "field mode with damping nu and gain delta (or thermal delta)",
     "truncation=16 nu=1 delta=0.2 omega=0 [temperature]"},
    {"redfield", "Born-Markov generator from a tabulated bath correlation",
     "omega0=1 coupling=1 tau_max=8 bath_file=<path>"},
    {"davies", "weak-coupling secular generator from a spectral table",
     "omega0=1 coupling=1 lamb_shift=1 bath_file=<path>"},
    {"belavin", "multi-channel kinetic equation with a rate matrix",
     "g1=1 g2=1 g3=1"},
};

int run_zoo_list() {
  for (const auto& e : kZoo)
    std::cout << e.name << "\n  " << e.summary << "\n  params: " << e.params << "\n";
  return 0;
}

class ParamSet {
 public:
  explicit ParamSet(const std::vector<std::string>& sets) {
    for (const auto& s : sets) {
      auto eq = s.find('=');
      if (eq == std::string::npos)
        throw io::parse_error("--set expects key=value, got '" + s + "'");
      values_[s.substr(0, eq)] = s.substr(eq + 1);
    }
  }

  double number(const std::string& key, double fallback) {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    used_.insert(it->first);
    return std::stod(it->second);
  }

  std::string text(const std::string& key, const std::string& fallback) {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    used_.insert(it->first);
    return it->second;
  }

  void finish() const {
    for (const auto& [k, v] : values_)
      if (used_.find(k) == used_.end())
        throw io::parse_error("--set: unknown parameter '" + k + "' for this generator");
  }

 private:
  std::map<std::string, std::string> values_;
  std::set<std::string> used_;
};

json two_level_hamiltonian(double omega0) {
  Matrix h(2, 2);
  h << 0.5 * omega0, 0.0, 0.0, -0.5 * omega0;
  return io::matrix_to_json(h);
}

int run_zoo_emit(const std::string& name, const std::vector<std::string>& sets) {
  ParamSet p(sets);
  json params;
  if (name == "pauli") {
    params["gamma1"] = p.number("gamma1", 1.0);
    params["gamma2"] = p.number("gamma2", 1.0);
    params["gamma3"] = p.number("gamma3", 1.0);
  } else if (name == "landau") {
    params["truncation"] = static_cast<int>(p.number("truncation", 6));
    params["gamma"] = p.number("gamma", 1.0);
  } else if (name == "optical_potential") {
    params["hamiltonian"] = two_level_hamiltonian(p.number("omega0", 1.0));
    Matrix v = Matrix::Zero(2, 2);
    v(0, 0) = p.number("v1", 0.5);
    v(1, 1) = p.number("v2", 0.25);
    params["potential"] = io::matrix_to_json(v);
  } else if (name == "lamb" || name == "cured_lamb") {
    params["hamiltonian"] = two_level_hamiltonian(p.number("omega0", 1.0));
    params["gamma1"] = p.number("gamma1", 1.0);
    params["gamma2"] = p.number("gamma2", 0.5);
  } else if (name == "laser") {
    params["truncation"] = static_cast<int>(p.number("truncation", 16));
    params["nu"] = p.number("nu", 1.0);
    double temperature = p.number("temperature", 0.0);
    if (temperature > 0.0) {
      params["temperature"] = temperature;
      params["omega"] = p.number("omega", 1.0);
    } else {
      params["delta"] = p.number("delta", 0.2);
      params["omega"] = p.number("omega", 0.0);
    }
  } else if (name == "redfield") {
    params["hamiltonian"] = two_level_hamiltonian(p.number("omega0", 1.0));
    params["couplings"] =
        json::array({io::matrix_to_json(p.number("coupling", 1.0) * pauli_x())});
    params["tau_max"] = p.number("tau_max", 8.0);
    params["bath_file"] = p.text("bath_file", "bath.txt");
  } else if (name == "davies") {
    params["hamiltonian"] = two_level_hamiltonian(p.number("omega0", 1.0));
    params["couplings"] =
        json::array({io::matrix_to_json(p.number("coupling", 1.0) * pauli_x())});
    params["lamb_shift"] = p.number("lamb_shift", 1.0) != 0.0;
    params["bath_file"] = p.text("bath_file", "bath.txt");
  } else if (name == "belavin") {
    params["ops"] = json::array({io::matrix_to_json(pauli_x()), io::matrix_to_json(pauli_y()),
                                 io::matrix_to_json(pauli_z())});
    Matrix rates = Matrix::Zero(3, 3);
    rates(0, 0) = p.number("g1", 1.0);
    rates(1, 1) = p.number("g2", 1.0);
    rates(2, 2) = p.number("g3", 1.0);
    params["rates"] = io::matrix_to_json(rates);
  } else {
    throw io::parse_error("unknown zoo generator '" + name + "'");
  }
  p.finish();
  json doc;
  doc["format_version"] = 1;
  doc["format"] = "zoo:" + name;
  doc["params"] = std::move(params);
  std::cout << doc.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"semigroup-forge: build, convert, check and evolve generators of "
               "quantum dynamical semigroups"};
  app.set_version_flag("--version", sgforge::version_string);
  app.require_subcommand(1);

  CheckOptions check_opt;
  auto* check = app.add_subcommand("check", "run diagnostics on a generator spec");
  check->add_option("spec", check_opt.spec_path, "generator spec file (JSON)")->required();
  check->add_option("--tol", check_opt.tolerance, "verdict tolerance (default 1e-9)");
  check->add_option("--times", check_opt.times_csv, "sample times for the CP check (csv)");
  check->add_option("--budget", check_opt.budget, "restarts for the positivity search");
  check->add_option("--seed", check_opt.seed, "seed for randomized procedures");
  check->add_option("--require", check_opt.require,
                    "verdicts that gate the exit code: trace, hermiticity, gkls, cp, "
                    "positivity, spectral")
      ->delimiter(',');

  EvolveOptions evolve_opt;
  auto* evolve = app.add_subcommand("evolve", "integrate a master equation, CSV to stdout");
  evolve->add_option("spec", evolve_opt.spec_path, "generator spec file (JSON)")->required();
  evolve->add_option("state", evolve_opt.state_path, "initial state file (JSON)")->required();
  evolve->add_option("--t0", evolve_opt.t0, "start time (default 0)");
  evolve->add_option("--t1", evolve_opt.t1, "end time")->required();
  evolve->add_option("--steps", evolve_opt.steps, "number of steps (default 100)");
  evolve->add_option("--method", evolve_opt.method, "exact | ode (default exact)");
  evolve->add_option("--rtol", evolve_opt.rtol, "relative tolerance for --method ode");
  evolve->add_option("--atol", evolve_opt.atol, "absolute tolerance for --method ode");

  ConvertOptions convert_opt;
  auto* convert = app.add_subcommand("convert", "convert a generator between forms");
  convert->add_option("spec", convert_opt.spec_path, "generator spec file (JSON)")->required();
  convert->add_option("--to", convert_opt.target, "gks | lindblad | kraus@t | choi@t")
      ->required();

  auto* zoo = app.add_subcommand("zoo", "catalogued master equations");
  zoo->require_subcommand(1);
  auto* zoo_list = zoo->add_subcommand("list", "list the catalogue");
  std::string emit_name;
  std::vector<std::string> emit_sets;
  auto* zoo_emit = zoo->add_subcommand("emit", "emit a spec file for a catalogue entry");
  zoo_emit->add_option("name", emit_name, "catalogue entry name")->required();
  zoo_emit->add_option("--set", emit_sets, "override a parameter, key=value")
      ->take_all();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*check) return run_check(check_opt);
    if (*evolve) return run_evolve(evolve_opt);
    if (*convert) return run_convert(convert_opt);
    if (*zoo_list) return run_zoo_list();
    if (*zoo_emit) return run_zoo_emit(emit_name, emit_sets);
  } catch (const sgforge::io::parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const sgforge::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
