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

#include "sgforge/operator_basis.hpp"
#include "sgforge/superoperator.hpp"

namespace sgforge {

inline Matrix traceless_part(const Matrix& m) {
  int n = static_cast<int>(m.rows());
  return m - (m.trace() / static_cast<double>(n)) * Matrix::Identity(n, n);
}

/// Generator in coefficient form: traceless Hermitian Hamiltonian plus a
/// Hermitian coefficient matrix over an orthonormal traceless basis,
///
///   L rho = -i[H, rho] + sum_kl C_kl (F_k rho F_l^dag - 1/2 {F_l^dag F_k, rho}).
///
/// C is stored unconstrained: generators with non-positive C are first-class
/// values here, and positivity is a queried property (is_gkls).
struct GksGenerator {
  Matrix hamiltonian;   // N x N, Hermitian, traceless
  Matrix coefficients;  // (N^2-1) x (N^2-1), Hermitian
  OperatorBasis basis;

  int dim() const { return basis.dim; }

  static GksGenerator make(Matrix h, Matrix c, OperatorBasis basis) {
    const int n = basis.dim;
    const int m = n * n - 1;
    if (h.rows() != n || h.cols() != n)
      throw dimension_error("GksGenerator: Hamiltonian dimension mismatch");
    if (c.rows() != m || c.cols() != m)
      throw dimension_error("GksGenerator: coefficient matrix must be (N^2-1) square");
    double hscale = std::max(1.0, h.norm());
    if (hermiticity_defect(h) > tol::basis * hscale)
      throw error("GksGenerator: Hamiltonian is not Hermitian");
    if (std::abs(h.trace()) > tol::basis * hscale)
      throw error("GksGenerator: Hamiltonian is not traceless");
    if (hermiticity_defect(c) > tol::basis * std::max(1.0, c.norm()))
      throw error("GksGenerator: coefficient matrix is not Hermitian");
    return GksGenerator{std::move(h), std::move(c), std::move(basis)};
  }
};

/// Generator in jump-operator form:
///
///   L rho = -i[H, rho] + sum_j (V_j rho V_j^dag - 1/2 {V_j^dag V_j, rho}).
///
/// The jump list may be empty (pure Hamiltonian evolution).
struct LindbladGenerator {
  Matrix hamiltonian;         // N x N, Hermitian
  std::vector<Matrix> jumps;  // arbitrary N x N operators

  int dim() const { return static_cast<int>(hamiltonian.rows()); }

  static LindbladGenerator make(Matrix h, std::vector<Matrix> jumps) {
    if (h.rows() != h.cols()) throw dimension_error("LindbladGenerator: Hamiltonian not square");
    if (hermiticity_defect(h) > tol::basis * std::max(1.0, h.norm()))
      throw error("LindbladGenerator: Hamiltonian is not Hermitian");
    for (const auto& v : jumps)
      if (v.rows() != h.rows() || v.cols() != h.cols())
        throw dimension_error("LindbladGenerator: jump operator dimension mismatch");
    return LindbladGenerator{std::move(h), std::move(jumps)};
  }
};

inline Superoperator gks_to_superop(const GksGenerator& g) {
  const int n = g.dim();
  const int m = g.basis.size();
  Matrix out = commutator_superop(g.hamiltonian);
  for (int k = 0; k < m; ++k) {
    const Matrix& fk = g.basis.elements[static_cast<std::size_t>(k)];
    for (int l = 0; l < m; ++l) {
      Complex c = g.coefficients(k, l);
      if (c == Complex(0.0, 0.0)) continue;
      const Matrix& fl = g.basis.elements[static_cast<std::size_t>(l)];
      Matrix flk = fl.adjoint() * fk;
      out += c * (sandwich_superop(fk, fl.adjoint()) -
                  0.5 * (left_mult_superop(flk) + right_mult_superop(flk)));
    }
  }
  return {n, std::move(out)};
}

inline Superoperator lindblad_to_superop(const LindbladGenerator& g) {
  Matrix out = commutator_superop(g.hamiltonian);
  for (const auto& v : g.jumps) out += dissipator_superop(v);
  return {g.dim(), std::move(out)};
}

struct GklsVerdict {
  bool passes = false;
  double min_eigenvalue = 0.0;
};

/// A coefficient-form generator defines a completely positive semigroup iff
/// its coefficient matrix is positive semidefinite.
inline GklsVerdict is_gkls(const GksGenerator& g, double tolerance = tol::psd) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(g.coefficients),
                                           Eigen::EigenvaluesOnly);
  double lo = es.eigenvalues().minCoeff();
  double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
  return {lo >= -tolerance * scale, lo};
}

/// Diagonalizes the coefficient matrix into jump operators
/// V_j = sqrt(lambda_j) sum_k (u_j)_k F_k, dropping eigenvalues below the
/// cutoff. Throws if the coefficient matrix has a genuinely negative
/// eigenvalue: no jump-operator form exists then.
inline LindbladGenerator gks_to_lindblad(const GksGenerator& g,
                                         double cutoff = tol::eigen_cutoff) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(g.coefficients));
  const auto& evals = es.eigenvalues();
  double scale = std::max(1.0, evals.cwiseAbs().maxCoeff());
  if (evals.minCoeff() < -cutoff * scale)
    throw not_positive_error(
        "gks_to_lindblad: coefficient matrix is not positive semidefinite, "
        "the generator is not of completely positive type",
        evals.minCoeff());
  std::vector<Matrix> jumps;
  const int n = g.dim();
  for (int j = 0; j < evals.size(); ++j) {
    if (evals(j) <= cutoff * scale) continue;
    Matrix v = Matrix::Zero(n, n);
    for (int k = 0; k < g.basis.size(); ++k)
      v += es.eigenvectors()(k, j) * g.basis.elements[static_cast<std::size_t>(k)];
    jumps.push_back(std::sqrt(evals(j)) * v);
  }
  return LindbladGenerator{g.hamiltonian, std::move(jumps)};
}

/// Expands every jump in the basis and absorbs the identity components into
/// the Hamiltonian, which comes out traceless; for a fixed basis the result
/// is unique at superoperator level.
inline GksGenerator lindblad_to_gks(const LindbladGenerator& g, const OperatorBasis& basis) {
  const int n = g.dim();
  if (basis.dim != n) throw dimension_error("lindblad_to_gks: basis dimension mismatch");
  const int m = basis.size();
  Matrix c = Matrix::Zero(m, m);
  Matrix h = g.hamiltonian;
  const double sqrtn = std::sqrt(static_cast<double>(n));
  for (const auto& v : g.jumps) {
    Expansion e = expand(v, basis);
    c += e.coeffs * e.coeffs.adjoint();
    Complex alpha = e.c0 / sqrtn;  // coefficient of the identity in V_j
    h += 0.5 * ci * (std::conj(alpha) * v - alpha * v.adjoint());
  }
  h = hermitian_part(traceless_part(h));
  c = hermitian_part(c);
  return GksGenerator{std::move(h), std::move(c), basis};
}

// Index shuffle between a superoperator matrix and the corresponding
// Choi-type matrix: out[i*N+k, j*N+l] = in[k + N*l, i + N*j]. Involutive.
inline Matrix choi_reshuffle(const Matrix& m, int n) {
  if (m.rows() != n * n || m.cols() != n * n)
    throw dimension_error("choi_reshuffle: matrix must be N^2 square");
  Matrix out(n * n, n * n);
  for (Eigen::Index a = 0; a < m.rows(); ++a)
    for (Eigen::Index b = 0; b < m.cols(); ++b)
      out(a, b) = m(a % n + n * (b % n), a / n + n * (b / n));
  return out;
}

/// Recovers the coefficient form of a trace- and Hermiticity-preserving
/// superoperator. Inverse of gks_to_superop on its image.
inline GksGenerator gks_from_superop(const Superoperator& s, const OperatorBasis& basis,
                                     double tolerance = tol::psd) {
  const int n = s.dim;
  if (basis.dim != n) throw dimension_error("gks_from_superop: basis dimension mismatch");
  double scale = std::max(1.0, s.mat.norm());
  if (s.trace_defect() > tolerance * scale)
    throw error("gks_from_superop: superoperator is not trace-preserving");
  if (s.hermiticity_preservation_defect() > tolerance * scale)
    throw error("gks_from_superop: superoperator is not Hermiticity-preserving");

  const int m = basis.size();
  // Process matrix over the frame {I/sqrt(N), F_1, ..., F_m}:
  // L rho = sum_ab q_ab G_a rho G_b^dag with q = V^dag choi(L) V.
  Matrix frame(n * n, m + 1);
  frame.col(0) = stack(Matrix::Identity(n, n) / std::sqrt(static_cast<double>(n)));
  for (int k = 0; k < m; ++k)
    frame.col(k + 1) = stack(basis.elements[static_cast<std::size_t>(k)]);
  Matrix q = frame.adjoint() * choi_reshuffle(s.mat, n) * frame;

  Matrix c = hermitian_part(q.block(1, 1, m, m));
  Matrix b = (q(0, 0) / (2.0 * n)) * Matrix::Identity(n, n);
  const double sqrtn = std::sqrt(static_cast<double>(n));
  for (int k = 0; k < m; ++k)
    b += (q(k + 1, 0) / sqrtn) * basis.elements[static_cast<std::size_t>(k)];
  Matrix w = Matrix::Zero(n, n);
  for (int k = 0; k < m; ++k)
    for (int l = 0; l < m; ++l)
      w += c(k, l) * basis.elements[static_cast<std::size_t>(l)].adjoint() *
           basis.elements[static_cast<std::size_t>(k)];
  Matrix h = hermitian_part(traceless_part(ci * (b + 0.5 * w)));
  return GksGenerator{std::move(h), std::move(c), basis};
}

}  // namespace sgforge
