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

#include "sgforge/cp_analysis.hpp"
#include "sgforge/ode.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <optional>

namespace sgforge {

inline Matrix expm(const Matrix& m) { return m.exp(); }

/// Positive-semidefinite unit-trace state. Construction validates the
/// invariants; evolution outputs are plain matrices, since master equations
/// outside the completely positive class can and do leave the state set,
/// which is a diagnostic result rather than an error.
struct DensityMatrix {
  int dim = 0;
  Matrix mat;

  static DensityMatrix make(Matrix rho, double tolerance = tol::structural) {
    if (rho.rows() != rho.cols()) throw dimension_error("DensityMatrix: matrix not square");
    if (hermiticity_defect(rho) > tolerance)
      throw error("DensityMatrix: matrix is not Hermitian");
    if (std::abs(rho.trace() - Complex(1.0)) > tolerance)
      throw error("DensityMatrix: trace is not 1");
    double lo = min_eigenvalue(rho);
    if (lo < -tolerance)
      throw not_positive_error("DensityMatrix: matrix is not positive semidefinite", lo);
    int n = static_cast<int>(rho.rows());
    return {n, std::move(rho)};
  }

  static DensityMatrix pure(const Vector& psi) {
    Vector u = psi / psi.norm();
    return {static_cast<int>(u.size()), u * u.adjoint()};
  }

  static DensityMatrix maximally_mixed(int n) {
    return {n, Matrix::Identity(n, n) / static_cast<double>(n)};
  }
};

struct StepDiagnostics {
  Complex trace;
  double lambda_min = 0.0;  // smallest eigenvalue of the Hermitian part
  double purity = 0.0;      // Re tr(rho^2)
};

inline StepDiagnostics diagnose(const Matrix& rho) {
  StepDiagnostics d;
  d.trace = rho.trace();
  d.lambda_min = min_eigenvalue(rho);
  d.purity = (rho * rho).trace().real();
  return d;
}

struct Trajectory {
  std::vector<double> times;
  std::vector<Matrix> states;
  std::vector<StepDiagnostics> diagnostics;
};

namespace detail {

inline void check_times(const std::vector<double>& times) {
  if (times.empty()) throw error("evolution: empty time grid");
  if (times.front() < 0.0) throw error("evolution: times must be nonnegative");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (times[i] <= times[i - 1]) throw error("evolution: times must be strictly increasing");
}

inline bool uniform_grid(const std::vector<double>& times, double& dt) {
  if (times.size() < 3) return false;
  dt = times[1] - times[0];
  double span = times.back() - times.front();
  for (std::size_t i = 1; i + 1 < times.size(); ++i)
    if (std::abs(times[i + 1] - times[i] - dt) > 1e-12 * std::max(1.0, span)) return false;
  return true;
}

}  // namespace detail

/// Propagates with the matrix exponential e^{t L} (scaling-and-squaring,
/// Pade approximant). On a uniform grid the per-step propagator is reused.
inline Trajectory evolve_exact(const Superoperator& s, const Matrix& rho0,
                               const std::vector<double>& times) {
  detail::check_times(times);
  if (rho0.rows() != s.dim || rho0.cols() != s.dim)
    throw dimension_error("evolve_exact: state dimension mismatch");
  Trajectory out;
  out.times = times;
  out.states.reserve(times.size());
  double dt = 0.0;
  if (detail::uniform_grid(times, dt)) {
    Matrix step = expm(dt * s.mat);
    Vector v = (times.front() == 0.0) ? stack(rho0)
                                      : Vector(expm(times.front() * s.mat) * stack(rho0));
    out.states.push_back(unstack(v, s.dim));
    for (std::size_t i = 1; i < times.size(); ++i) {
      v = step * v;
      out.states.push_back(unstack(v, s.dim));
    }
  } else {
    for (double t : times) {
      if (t == 0.0) {
        out.states.push_back(rho0);
      } else {
        out.states.push_back(unstack(expm(t * s.mat) * stack(rho0), s.dim));
      }
    }
  }
  out.diagnostics.reserve(times.size());
  for (const auto& st : out.states) out.diagnostics.push_back(diagnose(st));
  return out;
}

inline Trajectory evolve_exact(const Superoperator& s, const DensityMatrix& rho0,
                               const std::vector<double>& times) {
  return evolve_exact(s, rho0.mat, times);
}

/// Integrates the master equation with the adaptive embedded Runge-Kutta 5(4)
/// scheme on the stacked state. Throws stiffness_error when step control
/// collapses; evolve_exact is the remedy.
inline Trajectory evolve_ode(const Superoperator& s, const Matrix& rho0,
                             const std::vector<double>& times, double rtol = 1e-9,
                             double atol = 1e-12) {
  detail::check_times(times);
  if (rho0.rows() != s.dim || rho0.cols() != s.dim)
    throw dimension_error("evolve_ode: state dimension mismatch");
  OdeOptions opt;
  opt.rtol = rtol;
  opt.atol = atol;
  auto rhs = [&s](double, const Vector& y) -> Vector { return s.mat * y; };
  Trajectory out;
  out.times = times;
  Vector v = stack(rho0);
  double t = 0.0;
  for (double target : times) {
    if (target > t) v = rk45_integrate(rhs, v, t, target, opt);
    t = target;
    out.states.push_back(unstack(v, s.dim));
  }
  for (const auto& st : out.states) out.diagnostics.push_back(diagnose(st));
  return out;
}

inline Trajectory evolve_ode(const LindbladGenerator& g, const Matrix& rho0,
                             const std::vector<double>& times, double rtol = 1e-9,
                             double atol = 1e-12) {
  return evolve_ode(lindblad_to_superop(g), rho0, times, rtol, atol);
}

inline Trajectory evolve_ode(const GksGenerator& g, const Matrix& rho0,
                             const std::vector<double>& times, double rtol = 1e-9,
                             double atol = 1e-12) {
  return evolve_ode(gks_to_superop(g), rho0, times, rtol, atol);
}

/// Markov-property defect || e^{(t+s)L} - e^{tL} e^{sL} || (Frobenius);
/// a sanity check on the propagator, zero up to round-off for any generator.
inline double semigroup_check(const Superoperator& s, double t, double u) {
  if (t < 0.0 || u < 0.0) throw error("semigroup_check: times must be nonnegative");
  Matrix lhs = expm((t + u) * s.mat);
  Matrix rhs = expm(t * s.mat) * expm(u * s.mat);
  return (lhs - rhs).norm();
}

struct TimeCpVerdict {
  double t = 0.0;
  double min_choi_eigenvalue = 0.0;
  bool completely_positive = false;
};

/// Complete-positivity verdict of e^{tL} at each sample time.
inline std::vector<TimeCpVerdict> cp_along_trajectory(const Superoperator& s,
                                                      const std::vector<double>& times,
                                                      double tolerance = tol::psd) {
  std::vector<TimeCpVerdict> out;
  out.reserve(times.size());
  for (double t : times) {
    if (t < 0.0) throw error("cp_along_trajectory: times must be nonnegative");
    Superoperator map{s.dim, expm(t * s.mat)};
    CpVerdict v = is_completely_positive(choi_of_superop(map), tolerance);
    out.push_back({t, v.min_eigenvalue, v.completely_positive});
  }
  return out;
}

namespace detail {

// First sign change of f (good: f >= -tol, bad: f < -tol) on the sampled
// grid, refined by bisection to the requested absolute resolution.
template <typename Fn>
std::optional<double> first_violation(Fn&& f, const std::vector<double>& times,
                                      double tolerance, double resolution) {
  double prev_t = -1.0;
  for (double t : times) {
    if (f(t) < -tolerance) {
      double lo = (prev_t >= 0.0) ? prev_t : 0.0;
      double hi = t;
      while (hi - lo > resolution) {
        double mid = 0.5 * (lo + hi);
        (f(mid) < -tolerance ? hi : lo) = mid;
      }
      return hi;
    }
    prev_t = t;
  }
  return std::nullopt;
}

}  // namespace detail

/// First time at which e^{tL} stops being completely positive, refined to the
/// given absolute resolution; nullopt when no sampled time violates.
inline std::optional<double> first_cp_violation_time(const Superoperator& s,
                                                     const std::vector<double>& times,
                                                     double tolerance = tol::psd,
                                                     double resolution = 1e-4) {
  auto f = [&](double t) {
    Superoperator map{s.dim, expm(t * s.mat)};
    return is_completely_positive(choi_of_superop(map), tolerance).min_eigenvalue;
  };
  return detail::first_violation(f, times, tolerance, resolution);
}

/// First time at which the evolved state acquires a negative eigenvalue,
/// refined to the given absolute resolution.
inline std::optional<double> first_positivity_violation_time(
    const Superoperator& s, const Matrix& rho0, const std::vector<double>& times,
    double tolerance = 1e-7, double resolution = 1e-4) {
  auto f = [&](double t) {
    return min_eigenvalue(unstack(expm(t * s.mat) * stack(rho0), s.dim));
  };
  return detail::first_violation(f, times, tolerance, resolution);
}

struct PositivityCheckResult {
  double min_value = 0.0;        // min over orthonormal pairs of <psi|L(|phi><phi|)|psi>
  double trace_sum_defect = 0.0; // max observed |tr L(|phi><phi|)|
  Vector psi;
  Vector phi;
};

/// Positivity-only criterion for generators, specialized to finite dimension:
/// minimizes f(psi, phi) = <psi| L(|phi><phi|) |psi> over orthonormal pairs,
/// the rank-1 members of resolutions of identity (coarser resolutions are
/// sums of these conditions). A completely positive generator always passes;
/// the converse fails, which is the entire point of the criterion.
///
/// Multi-start projected gradient descent on the complex Stiefel manifold of
/// orthonormal 2-frames, deterministic for a fixed seed and budget.
inline PositivityCheckResult kossakowski_positivity_check(const Superoperator& s,
                                                          int budget = 64,
                                                          std::uint64_t seed = 0x5EED0004) {
  const int n = s.dim;
  if (n < 2) throw dimension_error("kossakowski_positivity_check: dimension must be >= 2");
  const Matrix adj = s.mat.adjoint();

  auto value_of = [&](const Matrix& w) {
    Vector psi = w.col(0), phi = w.col(1);
    Matrix x = s.apply(phi * phi.adjoint());
    return (psi.adjoint() * x * psi).value().real();
  };
  auto orthonormalize = [&](const Matrix& w) -> Matrix {
    Eigen::HouseholderQR<Matrix> qr(w);
    return qr.householderQ() * Matrix::Identity(n, 2);
  };

  struct Payload {
    Vector psi, phi;
    double trace_abs = 0.0;
  };
  auto run = [&](int r) -> std::pair<double, Payload> {
    std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(r)));
    Matrix w = orthonormalize(random_complex_matrix(n, 2, rng));
    double f = value_of(w);
    double alpha = 1.0;
    for (int it = 0; it < 300; ++it) {
      Vector psi = w.col(0), phi = w.col(1);
      Vector gpsi = s.apply(phi * phi.adjoint()) * psi;
      Vector gphi = unstack(adj * stack(psi * psi.adjoint()), n) * phi;
      Matrix g(n, 2);
      g.col(0) = gpsi;
      g.col(1) = gphi;
      Matrix wg = w.adjoint() * g;
      Matrix xi = g - w * (0.5 * (wg + wg.adjoint()));  // Stiefel tangent projection
      double gnorm = xi.norm();
      if (gnorm <= 1e-13 * std::max(1.0, std::abs(f))) break;
      alpha = std::min(alpha * 4.0, 1.0 / std::max(gnorm, 1e-12));
      bool moved = false;
      for (int bt = 0; bt < 40; ++bt) {
        Matrix w2 = orthonormalize(w - alpha * xi);
        double f2 = value_of(w2);
        if (f2 < f - 1e-4 * alpha * gnorm * gnorm) {
          w = std::move(w2);
          f = f2;
          moved = true;
          break;
        }
        alpha *= 0.5;
      }
      if (!moved) break;
    }
    Vector phi = w.col(1);
    double trace_abs = std::abs(s.apply(phi * phi.adjoint()).trace());
    return {f, Payload{w.col(0), w.col(1), trace_abs}};
  };

  auto [best, payload] = multistart_min<Payload>(std::max(1, budget), run);
  PositivityCheckResult out;
  out.min_value = best;
  out.psi = payload.psi;
  out.phi = payload.phi;
  out.trace_sum_defect = payload.trace_abs;
  return out;
}

/// Kernel of the generator via singular value decomposition; singular values
/// at or below tol * sigma_max count as zero. States with nonzero trace are
/// renormalized to unit trace.
inline std::vector<Matrix> steady_states(const Superoperator& s, double tolerance = 1e-10) {
  Eigen::BDCSVD<Matrix> svd(s.mat, Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  double smax = sv.size() > 0 ? sv(0) : 0.0;
  std::vector<Matrix> out;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > tolerance * std::max(smax, 1e-300)) continue;
    Matrix state = unstack(svd.matrixV().col(i), s.dim);
    Complex tr = state.trace();
    if (std::abs(tr) > 1e-12 * s.dim) state /= tr;
    out.push_back(std::move(state));
  }
  return out;
}

/// Full complex spectrum of the generator, sorted by descending real part
/// (ties by ascending imaginary part). For a completely positive semigroup
/// all real parts are nonpositive and eigenvalues come in conjugate pairs.
inline Vector spectral_analysis(const Superoperator& s) {
  Eigen::ComplexEigenSolver<Matrix> es(s.mat, false);
  Vector ev = es.eigenvalues();
  std::vector<Complex> v(ev.data(), ev.data() + ev.size());
  std::sort(v.begin(), v.end(), [](const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() < b.imag();
  });
  return Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

inline double spectral_abscissa(const Superoperator& s) {
  Eigen::ComplexEigenSolver<Matrix> es(s.mat, false);
  return es.eigenvalues().real().maxCoeff();
}

/// Trace distance (1/2) || rho - sigma ||_1 for Hermitian arguments.
inline double trace_distance(const Matrix& rho, const Matrix& sigma) {
  return 0.5 * trace_norm_hermitian(rho - sigma);
}

}  // namespace sgforge
