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

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace sgforge {

inline constexpr const char* version_string = "0.1.0";

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr Complex ci{0.0, 1.0};
inline constexpr double pi = 3.14159265358979323846;

// Default tolerances. Callers may override where an operation takes an
// explicit tol argument; these are the documented defaults.
namespace tol {
inline constexpr double basis = 1e-12;        // basis orthonormality / tracelessness
inline constexpr double eigen_cutoff = 1e-12; // discard numerically-zero Kraus/jump directions
inline constexpr double psd = 1e-9;           // PSD verdicts (relative to matrix scale)
inline constexpr double hermiticity = 1e-9;   // Hermiticity-preservation gate for Choi checks
inline constexpr double trajectory = 1e-8;    // trajectory diagnostics
inline constexpr double structural = 1e-10;   // construction-time invariants (Hermitian, traceless)
}  // namespace tol

class error : public std::runtime_error {
 public:
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

class dimension_error : public error {
 public:
  explicit dimension_error(const std::string& what) : error(what) {}
};

// Raised when a positivity precondition fails; carries the offending eigenvalue.
class not_positive_error : public error {
 public:
  not_positive_error(const std::string& what, double min_eigenvalue)
      : error(what + " (min eigenvalue " + std::to_string(min_eigenvalue) + ")"),
        min_eigenvalue_(min_eigenvalue) {}
  double min_eigenvalue() const noexcept { return min_eigenvalue_; }

 private:
  double min_eigenvalue_;
};

class stiffness_error : public error {
 public:
  explicit stiffness_error(const std::string& what) : error(what) {}
};

inline Matrix hermitian_part(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

inline double hermiticity_defect(const Matrix& m) { return (m - m.adjoint()).norm(); }

// Smallest eigenvalue of the Hermitian part of m.
inline double min_eigenvalue(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(m), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

// Trace norm of a Hermitian matrix (sum of absolute eigenvalues).
inline double trace_norm_hermitian(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(m), Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

// --- deterministic randomness -------------------------------------------------

// Derives a stream seed from a base seed and a stream index (splitmix64 step),
// so parallel restarts have independent but reproducible generators.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline Vector random_complex_vector(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector v(n);
  for (int i = 0; i < n; ++i) v(i) = Complex(gauss(rng), gauss(rng));
  return v;
}

inline Vector random_unit_vector(int n, std::mt19937_64& rng) {
  Vector v = random_complex_vector(n, rng);
  return v / v.norm();
}

inline Matrix random_complex_matrix(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix m(rows, cols);
  for (int c = 0; c < cols; ++c)
    for (int r = 0; r < rows; ++r) m(r, c) = Complex(gauss(rng), gauss(rng));
  return m;
}

// --- bounded parallelism ------------------------------------------------------

// Thread cap from SEMIGROUP_FORGE_THREADS; defaults to 1 (sequential).
inline int thread_budget() {
  const char* env = std::getenv("SEMIGROUP_FORGE_THREADS");
  if (env == nullptr) return 1;
  int n = std::atoi(env);
  if (n < 1) return 1;
  unsigned hw = std::thread::hardware_concurrency();
  if (hw > 0 && n > static_cast<int>(hw)) n = static_cast<int>(hw);
  return n;
}

// Runs fn(i) for i in [0, count) and returns the result with the smallest
// value, breaking ties by lowest index so the reduction is order-independent.
// Payload must be default-constructible and copyable.
template <typename Payload, typename Fn>
std::pair<double, Payload> multistart_min(int count, Fn&& fn) {
  struct Slot {
    double value = std::numeric_limits<double>::infinity();
    Payload payload{};
  };
  std::vector<Slot> slots(static_cast<std::size_t>(count));
  int threads = std::min(thread_budget(), count > 0 ? count : 1);
  if (threads <= 1) {
    for (int i = 0; i < count; ++i) {
      auto [v, p] = fn(i);
      slots[static_cast<std::size_t>(i)] = {v, p};
    }
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&, t]() {
        for (int i = t; i < count; i += threads) {
          auto [v, p] = fn(i);
          slots[static_cast<std::size_t>(i)] = {v, p};
        }
      });
    }
    for (auto& th : pool) th.join();
  }
  std::pair<double, Payload> best{std::numeric_limits<double>::infinity(), Payload{}};
  for (const auto& s : slots) {
    if (s.value < best.first) best = {s.value, s.payload};
  }
  return best;
}

}  // namespace sgforge
