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

inline Matrix pauli_x() {
  Matrix s(2, 2);
  s << 0, 1, 1, 0;
  return s;
}

inline Matrix pauli_y() {
  Matrix s(2, 2);
  s << 0, -ci, ci, 0;
  return s;
}

inline Matrix pauli_z() {
  Matrix s(2, 2);
  s << 1, 0, 0, -1;
  return s;
}

/// Orthonormal traceless Hermitian operator basis of M_N (N^2 - 1 elements,
/// Hilbert-Schmidt inner product). Immutable after construction.
struct OperatorBasis {
  int dim = 0;
  std::vector<Matrix> elements;

  int size() const { return static_cast<int>(elements.size()); }

  // Largest deviation from tr F_k = 0 and tr(F_k F_l^dag) = delta_kl.
  double orthonormality_defect() const {
    double worst = 0.0;
    const int m = size();
    for (int k = 0; k < m; ++k) {
      worst = std::max(worst, std::abs(elements[static_cast<std::size_t>(k)].trace()));
      for (int l = 0; l < m; ++l) {
        Complex g = (elements[static_cast<std::size_t>(k)] *
                     elements[static_cast<std::size_t>(l)].adjoint())
                        .trace();
        double target = (k == l) ? 1.0 : 0.0;
        worst = std::max(worst, std::abs(g - target));
      }
    }
    return worst;
  }

  double hermiticity_defect_max() const {
    double worst = 0.0;
    for (const auto& f : elements) worst = std::max(worst, hermiticity_defect(f));
    return worst;
  }
};

/// Generalized Gell-Mann basis of dimension N, normalized to Hilbert-Schmidt
/// norm 1, ordered symmetric, then antisymmetric, then diagonal. For N=2 this
/// is {sigma_x, sigma_y, sigma_z} / sqrt(2).
inline OperatorBasis gell_mann_basis(int n) {
  if (n < 2) throw dimension_error("gell_mann_basis: dimension must be at least 2");
  OperatorBasis basis;
  basis.dim = n;
  basis.elements.reserve(static_cast<std::size_t>(n) * n - 1);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      Matrix f = Matrix::Zero(n, n);
      f(j, k) = inv_sqrt2;
      f(k, j) = inv_sqrt2;
      basis.elements.push_back(std::move(f));
    }
  }
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      Matrix f = Matrix::Zero(n, n);
      f(j, k) = -ci * inv_sqrt2;
      f(k, j) = ci * inv_sqrt2;
      basis.elements.push_back(std::move(f));
    }
  }
  for (int l = 1; l < n; ++l) {
    Matrix f = Matrix::Zero(n, n);
    const double norm = 1.0 / std::sqrt(static_cast<double>(l) * (l + 1));
    for (int j = 0; j < l; ++j) f(j, j) = norm;
    f(l, l) = -static_cast<double>(l) * norm;
    basis.elements.push_back(std::move(f));
  }
  return basis;
}

struct Expansion {
  Complex c0;      // coefficient of I/sqrt(N)
  Vector coeffs;   // coefficients of the basis elements
};

/// Expands X = c0 * I/sqrt(N) + sum_k coeffs_k F_k. Exact up to round-off:
/// c0 = tr(X)/sqrt(N), coeffs_k = tr(F_k^dag X).
inline Expansion expand(const Matrix& x, const OperatorBasis& basis) {
  if (x.rows() != basis.dim || x.cols() != basis.dim)
    throw dimension_error("expand: operator and basis dimensions differ");
  Expansion e;
  e.c0 = x.trace() / std::sqrt(static_cast<double>(basis.dim));
  e.coeffs.resize(basis.size());
  for (int k = 0; k < basis.size(); ++k)
    e.coeffs(k) = (basis.elements[static_cast<std::size_t>(k)].adjoint() * x).trace();
  return e;
}

inline Matrix reconstruct(const Expansion& e, const OperatorBasis& basis) {
  Matrix x = (e.c0 / std::sqrt(static_cast<double>(basis.dim))) *
             Matrix::Identity(basis.dim, basis.dim);
  for (int k = 0; k < basis.size(); ++k)
    x += e.coeffs(k) * basis.elements[static_cast<std::size_t>(k)];
  return x;
}

}  // namespace sgforge
