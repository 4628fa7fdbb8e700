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

#include "sgforge/operator_basis.hpp"

#include "test_helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace sgforge;

TEST_CASE("gell_mann_basis(2) is the Pauli set over sqrt(2)") {
  OperatorBasis b = gell_mann_basis(2);
  REQUIRE(b.dim == 2);
  REQUIRE(b.size() == 3);
  const double s = 1.0 / std::sqrt(2.0);
  CHECK((b.elements[0] - s * pauli_x()).norm() == 0.0);
  CHECK((b.elements[1] - s * pauli_y()).norm() == 0.0);
  CHECK((b.elements[2] - s * pauli_z()).norm() == 0.0);
  // orthogonality of distinct elements
  CHECK(std::abs((b.elements[0] * b.elements[1].adjoint()).trace()) < 1e-15);
}

TEST_CASE("gell_mann_basis(3) has 8 traceless orthonormal elements") {
  OperatorBasis b = gell_mann_basis(3);
  REQUIRE(b.size() == 8);
  for (const auto& f : b.elements) CHECK(std::abs(f.trace()) <= 1e-12);
  for (int k = 0; k < 8; ++k)
    for (int l = 0; l < 8; ++l) {
      Complex g = (b.elements[k] * b.elements[l].adjoint()).trace();
      CHECK(std::abs(g - (k == l ? 1.0 : 0.0)) <= 1e-12);
    }
}

TEST_CASE("basis invariants hold for N in 2..6 at 1e-12") {
  for (int n = 2; n <= 6; ++n) {
    OperatorBasis b = gell_mann_basis(n);
    REQUIRE(b.size() == n * n - 1);
    CHECK(b.orthonormality_defect() <= 1e-12);
    CHECK(b.hermiticity_defect_max() <= 1e-12);
  }
}

TEST_CASE("gell_mann_basis rejects dimension below 2") {
  CHECK_THROWS_AS(gell_mann_basis(1), dimension_error);
  CHECK_THROWS_AS(gell_mann_basis(0), dimension_error);
}

TEST_CASE("expand of the identity has no traceless part") {
  OperatorBasis b = gell_mann_basis(2);
  Expansion e = expand(Matrix::Identity(2, 2), b);
  CHECK(std::abs(e.c0 - std::sqrt(2.0)) <= 1e-15);
  CHECK(e.coeffs.norm() <= 1e-15);
}

TEST_CASE("expand of sigma_z hits the third Pauli direction") {
  OperatorBasis b = gell_mann_basis(2);
  Expansion e = expand(pauli_z(), b);
  CHECK(std::abs(e.c0) <= 1e-15);
  CHECK(std::abs(e.coeffs(0)) <= 1e-15);
  CHECK(std::abs(e.coeffs(1)) <= 1e-15);
  CHECK(std::abs(e.coeffs(2) - std::sqrt(2.0)) <= 1e-15);
}

TEST_CASE("expand / reconstruct round-trips random operators") {
  std::mt19937_64 rng(11);
  for (int n : {2, 3, 5}) {
    OperatorBasis b = gell_mann_basis(n);
    for (int rep = 0; rep < 20; ++rep) {
      Matrix x = sgforge::random_complex_matrix(n, n, rng);
      Matrix back = reconstruct(expand(x, b), b);
      CHECK((back - x).norm() <= 1e-10 * std::max(1.0, x.norm()));
    }
  }
}

TEST_CASE("expand rejects mismatched dimensions") {
  OperatorBasis b = gell_mann_basis(2);
  CHECK_THROWS_AS(expand(Matrix::Identity(3, 3), b), dimension_error);
}
