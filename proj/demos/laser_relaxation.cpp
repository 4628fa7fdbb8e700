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

// Relaxation of a field mode toward its stationary occupation: prints
// t, <n>, trace and the top-level leakage as CSV.

#include "sgforge/equation_zoo.hpp"
#include "sgforge/semigroup.hpp"

#include <cstdio>

int main() {
  using namespace sgforge;
  const double nu = 1.0, delta = 0.25;
  FockSpec mode = FockSpec::make(16);
  Superoperator lv = lindblad_to_superop(laser_generator(mode, nu, delta));

  Matrix rho0 = Matrix::Zero(16, 16);
  rho0(5, 5) = 1.0;  // start in |5>

  std::vector<double> times;
  for (int k = 0; k <= 60; ++k) times.push_back(0.1 * k);
  Trajectory traj = evolve_exact(lv, rho0, times);

  Matrix number = mode.number();
  std::printf("t,occupation,trace,leakage\n");
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    double n = (number * traj.states[i]).trace().real();
    std::printf("%.6f,%.12f,%.12f,%.3e\n", traj.times[i], n,
                traj.diagnostics[i].trace.real(), fock_leakage(traj.states[i]));
  }
  std::printf("# stationary occupation delta/(nu-delta) = %.12f\n",
              thermal_occupation(nu, delta));
  return 0;
}
