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

// End-to-end acceptance suite. Each criterion prints one PASS/FAIL line;
// the exit code is the number of failed criteria.

#include "sgforge/io.hpp"

#include "../tests/test_helpers.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

using namespace sgforge;
using sgtest::run_command;

namespace {

const std::string cli = SGFORGE_CLI_PATH;
const std::string data_dir = SGFORGE_TEST_DATA_DIR;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::vector<double> linspace(double t0, double t1, int n) {
  std::vector<double> out;
  for (int k = 0; k < n; ++k) out.push_back(t0 + (t1 - t0) * k / (n - 1));
  return out;
}

// ---- criterion 1: qubit family, CP vs positivity-only, 21^3 grid ---------------

Outcome criterion1() {
  auto t0 = std::chrono::steady_clock::now();
  int gkls_disagreements = 0, positivity_disagreements = 0;
  const double tolerance = 1e-9;
  for (int i = 0; i <= 20; ++i) {
    for (int j = 0; j <= 20; ++j) {
      for (int k = 0; k <= 20; ++k) {
        double g1 = -2.0 + 0.2 * i, g2 = -2.0 + 0.2 * j, g3 = -2.0 + 0.2 * k;
        GksGenerator g = pauli_example_generator(g1, g2, g3);
        bool cp_expected = std::min({g1, g2, g3}) >= 0.0;
        if (is_gkls(g, tolerance).passes != cp_expected) ++gkls_disagreements;

        Superoperator s = gks_to_superop(g);
        double scale = std::max(1.0, s.mat.norm());
        PositivityCheckResult r = kossakowski_positivity_check(s, 6, 2024);
        bool pos = r.min_value >= -tolerance * scale;
        bool pos_expected =
            std::min({g1 + g2, g2 + g3, g3 + g1}) >= 0.0;  // pairwise rate sums
        if (pos != pos_expected) ++positivity_disagreements;
      }
    }
  }
  GksGenerator special = pauli_example_generator(1, 1, -1);
  Superoperator s = gks_to_superop(special);
  bool special_ok =
      kossakowski_positivity_check(s, 8, 7).min_value >= -1e-9 * s.mat.norm() &&
      !is_gkls(special).passes &&
      !cp_along_trajectory(s, {0.1})[0].completely_positive;

  double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  Outcome o;
  o.pass = gkls_disagreements == 0 && positivity_disagreements == 0 && special_ok &&
           seconds < 60.0;
  o.detail = "9261 points, gkls disagreements " + std::to_string(gkls_disagreements) +
             ", positivity disagreements " + std::to_string(positivity_disagreements) +
             ", (1,1,-1) split " + (special_ok ? "confirmed" : "broken") + ", " +
             std::to_string(seconds) + " s (< 60)";
  return o;
}

// ---- criterion 2: laser stationarity -------------------------------------------

Outcome criterion2() {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  o.pass = true;
  for (auto [nu, delta] : {std::pair{1.0, 0.2}, std::pair{1.0, 0.5}}) {
    double n_th = thermal_occupation(nu, delta);
    int d = std::max(16, static_cast<int>(std::ceil(30.0 * n_th)));
    FockSpec f = FockSpec::make(d);
    Superoperator s = lindblad_to_superop(laser_generator(f, nu, delta));
    auto states = steady_states(s);
    if (states.size() != 1) {
      o.pass = false;
      o.detail += "kernel dimension " + std::to_string(states.size()) + "; ";
      continue;
    }
    double n = (f.number() * states[0]).trace().real();
    Matrix gibbs = Matrix::Zero(d, d);
    double z = 0.0;
    for (int k = 0; k < d; ++k) z += std::pow(delta / nu, k);
    for (int k = 0; k < d; ++k) gibbs(k, k) = std::pow(delta / nu, k) / z;
    double dist = trace_distance(states[0], gibbs);
    double leak = fock_leakage(states[0]);
    bool ok = std::abs(n - n_th) <= 1e-6 && dist <= 1e-6 && leak <= 1e-8;
    o.pass = o.pass && ok;
    o.detail += "(nu=" + std::to_string(nu) + ",delta=" + std::to_string(delta) +
                ") D=" + std::to_string(d) + " |<n>-n_th|=" + std::to_string(std::abs(n - n_th)) +
                " gibbs distance=" + std::to_string(dist) + "; ";
  }
  double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.pass = o.pass && seconds < 30.0;
  o.detail += std::to_string(seconds) + " s (< 30)";
  return o;
}

// ---- criterion 3: form equivalence over random generators ----------------------

Outcome criterion3() {
  std::mt19937_64 rng(0xC3);
  int triangle_failures = 0, inverse_failures = 0, cp_disagreements = 0;
  for (int n : {2, 3, 4}) {
    OperatorBasis basis = gell_mann_basis(n);
    for (int rep = 0; rep < 200; ++rep) {
      bool psd = rep % 2 == 0;
      Matrix h = sgtest::random_traceless_hermitian(n, rng);
      h /= std::max(1.0, h.norm());
      Matrix c = psd ? sgtest::random_psd(n * n - 1, rng)
                     : sgtest::random_indefinite(n * n - 1, rng);
      GksGenerator g{h, c, basis};
      Superoperator s = gks_to_superop(g);

      if (psd) {
        Superoperator via_lindblad = lindblad_to_superop(gks_to_lindblad(g));
        if ((via_lindblad.mat - s.mat).norm() > 1e-10 * std::max(1.0, s.mat.norm()))
          ++triangle_failures;
      }
      GksGenerator back = gks_from_superop(s, basis);
      if ((back.hamiltonian - g.hamiltonian).norm() > 1e-10 ||
          (back.coefficients - g.coefficients).norm() > 1e-10)
        ++inverse_failures;

      bool c_psd = is_gkls(g, 1e-9).passes;
      for (double t : {0.1, 1.0}) {
        Superoperator map{n, expm(t * s.mat)};
        bool cp = is_completely_positive(choi_of_superop(map), 1e-9).completely_positive;
        if (cp != c_psd) ++cp_disagreements;
      }
    }
  }
  Outcome o;
  o.pass = triangle_failures == 0 && inverse_failures == 0 && cp_disagreements == 0;
  o.detail = "600 generators: triangle failures " + std::to_string(triangle_failures) +
             ", inverse failures " + std::to_string(inverse_failures) +
             ", CP-iff-PSD disagreements " + std::to_string(cp_disagreements);
  return o;
}

// ---- criterion 4: Kraus / Choi / Stinespring / sampling oracle ------------------

Outcome criterion4() {
  std::mt19937_64 rng(0xC4);
  int failures = 0;
  double worst_round = 0.0, worst_tp = 0.0, worst_iso = 0.0, worst_oracle = 0.0;
  for (int rep = 0; rep < 200; ++rep) {
    int n = 2 + rep % 3;
    int count = 1 + rep % (n * n);
    KrausSet k{n, sgtest::random_tp_kraus(n, count, rng)};
    Superoperator s = superop_from_kraus(k);

    KrausSet k2 = kraus_from_choi(choi_of_superop(s));
    double round = (superop_from_kraus(k2).mat - s.mat).norm();
    double tp = k2.trace_preservation_defect();
    double iso = stinespring_dilate(k2).isometry_defect();
    double oracle = k_positivity_oracle(s, n, 1000, 0xC40 + rep);
    worst_round = std::max(worst_round, round);
    worst_tp = std::max(worst_tp, tp);
    worst_iso = std::max(worst_iso, iso);
    worst_oracle = std::min(worst_oracle, oracle);
    if (round > 1e-9 || tp > 1e-9 || iso > 1e-8 || oracle < -1e-9) ++failures;
  }
  Outcome o;
  o.pass = failures == 0;
  o.detail = "200 channels: worst round-trip " + std::to_string(worst_round) +
             ", worst sum K^dag K defect " + std::to_string(worst_tp) +
             ", worst V^dag V defect " + std::to_string(worst_iso) +
             ", most negative oracle sample " + std::to_string(worst_oracle);
  return o;
}

// ---- criterion 5: the dynamical-matrix gap --------------------------------------

Outcome criterion5() {
  Superoperator transpose{2, stacking_swap(2)};
  ChoiMatrix c = choi_of_superop(transpose);
  BlockPositivityResult bp = block_positivity_min(c, 32, 0xC5);
  CpVerdict cp = is_completely_positive(c, 1e-9);
  bool transpose_ok = bp.min_value >= -1e-9 && std::abs(cp.min_eigenvalue + 1.0) <= 1e-10;

  std::mt19937_64 rng(0xC5C5);
  int decompose_failures = 0;
  for (int rep = 0; rep < 100; ++rep) {
    int n = 2 + rep % 2;
    Matrix b;
    bool psd = rep % 2 == 0;
    if (psd) {
      KrausSet k{n, sgtest::random_tp_kraus(n, 1 + rep % 3, rng)};
      b = choi_of_superop(superop_from_kraus(k)).mat;
    } else {
      b = sgtest::random_indefinite(n * n, rng);
    }
    bool threw = false;
    try {
      smr_decompose(b);
    } catch (const not_positive_error&) {
      threw = true;
    }
    if (threw == psd) ++decompose_failures;
  }
  Outcome o;
  o.pass = transpose_ok && decompose_failures == 0;
  o.detail = std::string("transpose: block min ") + std::to_string(bp.min_value) +
             ", Choi min eigenvalue " + std::to_string(cp.min_eigenvalue) +
             "; decomposition verdict failures " + std::to_string(decompose_failures) +
             "/100";
  return o;
}

// ---- criterion 6: zoo fates ------------------------------------------------------

Outcome criterion6() {
  Outcome o;
  o.pass = true;
  std::mt19937_64 rng(0xC6);
  std::vector<double> times = linspace(0.0, 2.0, 11);

  // absorption models lose trace monotonically on random states
  Matrix h2 = 0.5 * pauli_z();
  Superoperator optical = optical_potential_generator(
      h2, sgtest::random_psd(2, rng) + 0.1 * Matrix::Identity(2, 2));
  Superoperator lamb = lamb_generator(h2, 1.0, 0.4);
  for (const Superoperator* s : {&optical, &lamb}) {
    for (int rep = 0; rep < 10; ++rep) {
      Trajectory traj = evolve_exact(*s, sgtest::random_density(2, rng), times);
      double prev = 1.0 + 1e-12;
      for (const auto& d : traj.diagnostics) {
        if (d.trace.real() > prev + 1e-10) {
          o.pass = false;
          o.detail += "trace increase in an absorption model; ";
        }
        prev = d.trace.real();
      }
      if (traj.diagnostics.back().trace.real() >= 1.0) {
        o.pass = false;
        o.detail += "absorption model failed to drain the trace; ";
      }
    }
  }

  // cured decay: trace-preserving and completely positive
  LindbladGenerator cured = cure_lamb(h2, 1.0, 0.4);
  Superoperator cured_s = lindblad_to_superop(cured);
  if (cured_s.trace_defect() > 1e-8 ||
      !is_gkls(lindblad_to_gks(cured, gell_mann_basis(2))).passes) {
    o.pass = false;
    o.detail += "cured decay not trace-preserving or not GKLS; ";
  }

  // recorded witness: the Born-Markov generator drives a state negative
  io::json doc = io::parse_json_text(io::read_file(data_dir + "/redfield_witness.json"),
                                     "redfield_witness.json");
  io::RealizedGenerator redfield =
      io::realize_generator(doc["spec"], data_dir + "/redfield_witness.json");
  Matrix rho0 = io::matrix_from_json(doc["rho0"]);
  double t_witness = doc["t"].get<double>();
  double lam = min_eigenvalue(
      unstack(expm(t_witness * redfield.superop.mat) * stack(rho0), redfield.dim));
  if (!(lam < -1e-4)) {
    o.pass = false;
    o.detail += "witness lambda_min " + std::to_string(lam) + " not < -1e-4; ";
  }

  // thermal two-level weak-coupling generator: equals the field-mode form, relaxes to Gibbs
  const double nu = 1.0, delta = 0.35, omega0 = 1.0;
  FockSpec two = FockSpec::make(2);
  Matrix h = omega0 * two.number();
  std::vector<double> grid = {-omega0, 0.0, omega0};
  std::vector<Matrix> vals(3, Matrix::Zero(1, 1));
  vals[0](0, 0) = 2.0 * delta;
  vals[1](0, 0) = std::sqrt(4.0 * nu * delta);
  vals[2](0, 0) = 2.0 * nu;
  DaviesOptions dopt;
  dopt.lamb_shift = false;
  DaviesGenerator davies =
      davies_generator(h, {pauli_x()}, BathSpec::frequency_domain(grid, vals), dopt);
  Superoperator laser = lindblad_to_superop(laser_generator(two, nu, delta, omega0));
  double structure = (davies.superop.mat - laser.mat).norm();
  if (structure > 1e-9) {
    o.pass = false;
    o.detail += "davies/laser mismatch " + std::to_string(structure) + "; ";
  }
  double temperature = omega0 / std::log(nu / delta);
  Trajectory relax = evolve_exact(davies.superop, sgtest::random_density(2, rng), {40.0});
  double gibbs_dist = trace_distance(relax.states[0], gibbs_state(h, temperature));
  if (gibbs_dist > 1e-7) {
    o.pass = false;
    o.detail += "davies Gibbs distance " + std::to_string(gibbs_dist) + "; ";
  }
  if (o.pass)
    o.detail = "absorption drains, cure restores, witness lambda_min " +
               std::to_string(lam) + ", davies/laser defect " + std::to_string(structure) +
               ", Gibbs distance " + std::to_string(gibbs_dist);
  return o;
}

// ---- criterion 7: evolution numerics --------------------------------------------

Outcome criterion7() {
  Outcome o;
  o.pass = true;
  std::mt19937_64 rng(0xC7);
  const double rtol = 1e-9, threshold = std::max(10.0 * rtol, 1e-8);

  std::vector<std::pair<std::string, Superoperator>> zoo;
  zoo.push_back({"landau", lindblad_to_superop(landau_generator(FockSpec::make(6), 1.0))});
  zoo.push_back({"optical", optical_potential_generator(0.5 * pauli_z(),
                                                        sgtest::random_psd(2, rng))});
  zoo.push_back({"lamb", lamb_generator(0.5 * pauli_z(), 1.0, 0.4)});
  zoo.push_back({"cured_lamb", lindblad_to_superop(cure_lamb(0.5 * pauli_z(), 1.0, 0.4))});
  zoo.push_back({"laser", lindblad_to_superop(laser_generator(FockSpec::make(8), 1.0, 0.3))});
  {
    io::json doc = io::parse_json_text(io::read_file(data_dir + "/redfield_witness.json"),
                                       "redfield_witness.json");
    zoo.push_back({"redfield",
                   io::realize_generator(doc["spec"], data_dir + "/redfield_witness.json")
                       .superop});
  }
  {
    Matrix h = FockSpec::make(2).number();
    std::vector<double> grid = {-1.0, 0.0, 1.0};
    std::vector<Matrix> vals(3, Matrix::Zero(1, 1));
    vals[0](0, 0) = 0.4;
    vals[1](0, 0) = 0.2;
    vals[2](0, 0) = 1.6;
    DaviesOptions dopt;
    dopt.lamb_shift = false;
    zoo.push_back({"davies",
                   davies_generator(h, {pauli_x()}, BathSpec::frequency_domain(grid, vals),
                                    dopt)
                       .superop});
  }
  {
    Matrix rates(2, 2);
    rates << 1.0, 0.3, 0.3, 0.8;
    zoo.push_back({"belavin", belavin_generator({pauli_x(), pauli_z()}, rates).superop});
  }
  zoo.push_back({"pauli", gks_to_superop(pauli_example_generator(1, 1, 1))});

  std::vector<double> times = {0.25, 0.5, 1.0, 2.0};
  double worst = 0.0;
  for (const auto& [name, s] : zoo) {
    Matrix rho0 = sgtest::random_density(s.dim, rng);
    Trajectory exact = evolve_exact(s, rho0, times);
    Trajectory ode = evolve_ode(s, rho0, times, rtol, 1e-12);
    for (std::size_t i = 0; i < times.size(); ++i) {
      double diff = (exact.states[i] - ode.states[i]).norm();
      worst = std::max(worst, diff);
      if (diff > threshold) {
        o.pass = false;
        o.detail += name + " diff " + std::to_string(diff) + " at t=" +
                    std::to_string(times[i]) + "; ";
      }
    }
  }

  // Markov property on random time pairs
  Superoperator s = lindblad_to_superop(laser_generator(FockSpec::make(5), 1.0, 0.4));
  std::uniform_real_distribution<double> uni(0.0, 2.0);
  double worst_defect = 0.0;
  for (int rep = 0; rep < 50; ++rep) {
    double defect = semigroup_check(s, uni(rng), uni(rng));
    worst_defect = std::max(worst_defect, defect);
  }
  if (worst_defect > 1e-9) {
    o.pass = false;
    o.detail += "semigroup defect " + std::to_string(worst_defect) + "; ";
  }
  if (o.pass)
    o.detail = "ode-vs-exact worst " + std::to_string(worst) + " (tol " +
               std::to_string(threshold) + "), semigroup worst defect " +
               std::to_string(worst_defect) + " over 50 pairs";
  return o;
}

// ---- criterion 8: CLI determinism ------------------------------------------------

Outcome criterion8() {
  Outcome o;
  char tmpl[] = "/tmp/sgforge_accept_XXXXXX";
  std::string dir = mkdtemp(tmpl);
  auto write = [&](const std::string& name, const std::string& text) {
    std::ofstream out(dir + "/" + name);
    out << text;
    return dir + "/" + name;
  };

  io::json pauli;
  pauli["format_version"] = 1;
  pauli["format"] = "zoo:pauli";
  pauli["params"] = {{"gamma1", 1.0}, {"gamma2", 1.0}, {"gamma3", -1.0}};
  std::string pauli_path = write("pauli.json", pauli.dump());

  io::json landau;
  landau["format_version"] = 1;
  landau["format"] = "zoo:landau";
  landau["params"] = {{"truncation", 6}, {"gamma", 1.0}};
  std::string landau_path = write("landau.json", landau.dump());

  Matrix rho0 = Matrix::Zero(6, 6);
  rho0(3, 3) = 1.0;
  std::string state_path = write("state.json", io::state_to_json(rho0).dump());

  io::json laser;
  laser["format_version"] = 1;
  laser["format"] = "zoo:laser";
  laser["params"] = {{"truncation", 8}, {"nu", 1.0}, {"delta", 0.3}, {"omega", 0.0}};
  std::string laser_path = write("laser.json", laser.dump());

  std::vector<std::string> suite = {
      cli + " zoo list",
      cli + " zoo emit pauli --set gamma3=-1",
      cli + " check " + pauli_path + " --seed 42 --budget 16",
      cli + " check " + pauli_path + " --seed 42 --budget 16 --require positivity",
      cli + " evolve " + landau_path + " " + state_path + " --t1 2 --steps 40",
      cli + " convert " + laser_path + " --to kraus@0.1",
      cli + " convert " + pauli_path + " --to gks",
  };
  auto run_suite = [&](const std::string& prefix) {
    std::string all;
    for (const auto& cmd : suite) {
      auto r = run_command(prefix + cmd + " 2>/dev/null");
      all += "== exit " + std::to_string(r.exit_code) + "\n" + r.output;
    }
    return all;
  };
  std::string first = run_suite("");
  std::string second = run_suite("");
  std::string threaded = run_suite("SEMIGROUP_FORGE_THREADS=4 ");
  std::filesystem::remove_all(dir);

  bool identical = first == second;
  bool thread_identical = first == threaded;
  o.pass = identical && thread_identical && !first.empty();
  o.detail = std::string("two runs byte-identical: ") + (identical ? "yes" : "NO") +
             ", threaded run identical: " + (thread_identical ? "yes" : "NO") + ", " +
             std::to_string(first.size()) + " bytes compared";
  return o;
}

}  // namespace

int main() {
  struct Entry {
    int number;
    const char* label;
    Outcome (*fn)();
  };
  const Entry entries[] = {
      {1, "qubit family: CP iff rates nonnegative, positivity iff pairwise sums", criterion1},
      {2, "laser stationarity: occupation and Gibbs form", criterion2},
      {3, "form equivalence on random generators", criterion3},
      {4, "Kraus/Choi/Stinespring round trips and sampling oracle", criterion4},
      {5, "dynamical-matrix gap: block-positive vs positive semidefinite", criterion5},
      {6, "zoo fates: trace loss, cure, witness, weak-coupling thermal", criterion6},
      {7, "evolution numerics: ode vs exact, Markov property", criterion7},
      {8, "CLI determinism: byte-identical reports", criterion8},
  };
  int failures = 0;
  for (const auto& e : entries) {
    Outcome o;
    try {
      o = e.fn();
    } catch (const std::exception& ex) {
      o.pass = false;
      o.detail = std::string("exception: ") + ex.what();
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << e.number << ": " << e.label
              << " [" << o.detail << "]" << std::endl;
    if (!o.pass) ++failures;
  }
  return failures;
}
