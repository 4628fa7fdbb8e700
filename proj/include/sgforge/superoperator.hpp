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

namespace sgforge {

// Stacking convention, fixed project-wide: stack(rho)[r + N*c] = rho(r, c)
// (column stacking). Consequently vec(A X B) = kron(B^T, A) vec(X), with
// kron(P, Q)[i*rows(Q)+k, j*cols(Q)+l] = P(i,j) Q(k,l).

inline Vector stack(const Matrix& rho) {
  return Eigen::Map<const Vector>(rho.data(), rho.size());
}

inline Matrix unstack(const Vector& v, int n) {
  return Eigen::Map<const Matrix>(v.data(), n, n);
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Permutation S with vec(X^dag) = S * conj(vec(X)); S maps index c + N*r to
// r + N*c and squares to the identity.
inline Matrix stacking_swap(int n) {
  Matrix s = Matrix::Zero(n * n, n * n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) s(r + n * c, c + n * r) = 1.0;
  return s;
}

/// N^2 x N^2 matrix acting on column-stacked density matrices; the concrete
/// realization of a generator or dynamical map.
struct Superoperator {
  int dim = 0;
  Matrix mat;

  static Superoperator zero(int n) { return {n, Matrix::Zero(n * n, n * n)}; }
  static Superoperator identity(int n) { return {n, Matrix::Identity(n * n, n * n)}; }

  Matrix apply(const Matrix& rho) const {
    if (rho.rows() != dim || rho.cols() != dim)
      throw dimension_error("Superoperator::apply: state dimension mismatch");
    return unstack(mat * stack(rho), dim);
  }

  // || vec(I)^dag mat ||_inf: zero iff tr(L rho) = 0 for all rho.
  double trace_defect() const {
    Vector id = stack(Matrix::Identity(dim, dim));
    return (id.adjoint() * mat).cwiseAbs().maxCoeff();
  }

  // || mat - S conj(mat) S ||: zero iff L(rho^dag) = L(rho)^dag for all rho.
  double hermiticity_preservation_defect() const {
    Matrix s = stacking_swap(dim);
    return (mat - s * mat.conjugate() * s).norm();
  }
};

inline Superoperator operator*(const Superoperator& a, const Superoperator& b) {
  if (a.dim != b.dim) throw dimension_error("Superoperator product: dimension mismatch");
  return {a.dim, a.mat * b.mat};
}

inline Superoperator operator+(const Superoperator& a, const Superoperator& b) {
  if (a.dim != b.dim) throw dimension_error("Superoperator sum: dimension mismatch");
  return {a.dim, a.mat + b.mat};
}

// rho -> A rho
inline Matrix left_mult_superop(const Matrix& a) {
  return kron(Matrix::Identity(a.rows(), a.cols()), a);
}

// rho -> rho B
inline Matrix right_mult_superop(const Matrix& b) {
  return kron(b.transpose(), Matrix::Identity(b.rows(), b.cols()));
}

// rho -> A rho B
inline Matrix sandwich_superop(const Matrix& a, const Matrix& b) {
  return kron(b.transpose(), a);
}

// rho -> -i [H, rho]
inline Matrix commutator_superop(const Matrix& h) {
  return -ci * (left_mult_superop(h) - right_mult_superop(h));
}

// rho -> V rho V^dag - (1/2){V^dag V, rho}
inline Matrix dissipator_superop(const Matrix& v) {
  Matrix vdv = v.adjoint() * v;
  return sandwich_superop(v, v.adjoint()) -
         0.5 * (left_mult_superop(vdv) + right_mult_superop(vdv));
}

}  // namespace sgforge
