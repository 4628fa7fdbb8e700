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

#pragma once

#include "sgforge/common.hpp"
#include "sgforge/superoperator.hpp"

#include <cstdio>
#include <functional>
#include <random>
#include <string>

namespace sgtest {

using sgforge::Complex;
using sgforge::Matrix;
using sgforge::Vector;

inline Matrix random_hermitian(int n, std::mt19937_64& rng) {
  Matrix g = sgforge::random_complex_matrix(n, n, rng);
  return 0.5 * (g + g.adjoint());
}

inline Matrix random_traceless_hermitian(int n, std::mt19937_64& rng) {
  Matrix h = random_hermitian(n, rng);
  return h - (h.trace() / static_cast<double>(n)) * Matrix::Identity(n, n);
}

// Random PSD matrix normalized to spectral norm ~1.
inline Matrix random_psd(int n, std::mt19937_64& rng) {
  Matrix g = sgforge::random_complex_matrix(n, n, rng);
  Matrix p = g * g.adjoint();
  return p / p.norm();
}

// Random Hermitian with at least one eigenvalue below -margin (after
// normalization); used where tests need a clearly indefinite matrix.
inline Matrix random_indefinite(int n, std::mt19937_64& rng, double margin = 0.05) {
  for (int attempt = 0; attempt < 100; ++attempt) {
    Matrix h = random_hermitian(n, rng);
    h /= h.norm();
    Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -margin) return h;
  }
  throw std::runtime_error("random_indefinite: could not sample");
}

// Random full-rank density matrix (Ginibre ensemble).
inline Matrix random_density(int n, std::mt19937_64& rng) {
  Matrix g = sgforge::random_complex_matrix(n, n, rng);
  Matrix rho = g * g.adjoint();
  return rho / rho.trace();
}

inline Vector random_pure(int n, std::mt19937_64& rng) {
  return sgforge::random_unit_vector(n, rng);
}

// Random trace-preserving CP channel: Ginibre Kraus operators whitened so
// that sum K^dag K = I.
inline std::vector<Matrix> random_tp_kraus(int n, int count, std::mt19937_64& rng) {
  std::vector<Matrix> g;
  Matrix s = Matrix::Zero(n, n);
  for (int i = 0; i < count; ++i) {
    g.push_back(sgforge::random_complex_matrix(n, n, rng));
    s += g.back().adjoint() * g.back();
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(s);
  Matrix whiten = es.operatorInverseSqrt();
  for (auto& k : g) k = k * whiten;
  return g;
}

inline Matrix random_unitary(int n, std::mt19937_64& rng) {
  Matrix g = sgforge::random_complex_matrix(n, n, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  return qr.householderQ() * Matrix::Identity(n, n);
}

// Independent superoperator assembly: applies `map` to every matrix unit and
// stacks the results columnwise. Used to cross-check the algebraic builders.
inline Matrix superop_of_map(int n, const std::function<Matrix(const Matrix&)>& map) {
  Matrix out(n * n, n * n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      Matrix e = Matrix::Zero(n, n);
      e(i, j) = 1.0;
      out.col(i + n * j) = sgforge::stack(map(e));
    }
  }
  return out;
}

// Fixed-step classical RK4 on d(rho)/dt = rhs(rho); the independent
// integration oracle for trajectory tests.
inline Matrix rk4_fixed(const std::function<Matrix(const Matrix&)>& rhs, Matrix rho,
                        double t1, int steps) {
  double h = t1 / steps;
  for (int s = 0; s < steps; ++s) {
    Matrix k1 = rhs(rho);
    Matrix k2 = rhs(rho + 0.5 * h * k1);
    Matrix k3 = rhs(rho + 0.5 * h * k2);
    Matrix k4 = rhs(rho + h * k3);
    rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return rho;
}

// Partial trace over the environment (row-block index) of a (n*r) x (n*r)
// matrix: sum of the diagonal n x n blocks.
inline Matrix partial_trace_env(const Matrix& m, int n) {
  int r = static_cast<int>(m.rows()) / n;
  Matrix out = Matrix::Zero(n, n);
  for (int a = 0; a < r; ++a) out += m.block(a * n, a * n, n, n);
  return out;
}

struct CommandResult {
  int exit_code = -1;
  std::string output;
};

// Runs a shell command, capturing stdout (stderr untouched).
inline CommandResult run_command(const std::string& cmd) {
  CommandResult res;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return res;
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) res.output.append(buf, got);
  int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

}  // namespace sgtest
