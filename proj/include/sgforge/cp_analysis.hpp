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

#include "sgforge/generators.hpp"

namespace sgforge {

// Choi-type matrices use the unnormalized convention
//   C = sum_ij |i><j| (x) Phi(|i><j|),
// packed so that entry C(i*N+k, j*N+l) = Phi(|i><j|)(k, l). This is the
// choi_reshuffle of the superoperator matrix. The normalized projector
// convention differs by a factor 1/N, which never changes a PSD verdict.

/// Choi matrix of a map; Hermitian whenever the map preserves Hermiticity.
struct ChoiMatrix {
  int dim = 0;
  Matrix mat;
};

inline ChoiMatrix choi_of_superop(const Superoperator& s) {
  const int n = s.dim;
  ChoiMatrix c{n, Matrix(n * n, n * n)};
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      c.mat.block(i * n, j * n, n, n) = unstack(s.mat.col(i + n * j), n);
  return c;
}

struct CpVerdict {
  bool completely_positive = false;
  double min_eigenvalue = 0.0;
};

/// Positivity of the Choi matrix decides complete positivity. Throws when the
/// Choi matrix is not Hermitian (the map does not preserve Hermiticity), since
/// the question is then ill-posed.
inline CpVerdict is_completely_positive(const ChoiMatrix& c, double tolerance = tol::psd) {
  double scale = std::max(1.0, c.mat.norm());
  if (hermiticity_defect(c.mat) > tol::hermiticity * scale)
    throw error("is_completely_positive: Choi matrix is not Hermitian, "
                "the map does not preserve Hermiticity");
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(c.mat), Eigen::EigenvaluesOnly);
  double lo = es.eigenvalues().minCoeff();
  double escale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
  return {lo >= -tolerance * escale, lo};
}

/// Kraus operators with weights absorbed: Phi(rho) = sum_a K_a rho K_a^dag.
struct KrausSet {
  int dim = 0;
  std::vector<Matrix> ops;

  Matrix apply(const Matrix& rho) const {
    Matrix out = Matrix::Zero(dim, dim);
    for (const auto& k : ops) out += k * rho * k.adjoint();
    return out;
  }

  // || sum K^dag K - I ||; zero iff the channel is trace-preserving.
  double trace_preservation_defect() const {
    Matrix acc = Matrix::Zero(dim, dim);
    for (const auto& k : ops) acc += k.adjoint() * k;
    return (acc - Matrix::Identity(dim, dim)).norm();
  }
};

/// Eigendecomposes the Choi matrix into at most N^2 Kraus operators
/// K_a = sqrt(lambda_a) unstack(v_a). Throws when an eigenvalue is negative
/// beyond the tolerance: the map is not completely positive.
inline KrausSet kraus_from_choi(const ChoiMatrix& c, double tolerance = tol::psd) {
  const int n = c.dim;
  double scale = std::max(1.0, c.mat.norm());
  if (hermiticity_defect(c.mat) > tol::hermiticity * scale)
    throw error("kraus_from_choi: Choi matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(c.mat));
  const auto& evals = es.eigenvalues();
  double escale = std::max(1.0, evals.cwiseAbs().maxCoeff());
  if (evals.minCoeff() < -tolerance * escale)
    throw not_positive_error("kraus_from_choi: map is not completely positive",
                             evals.minCoeff());
  KrausSet k{n, {}};
  for (int j = 0; j < evals.size(); ++j) {
    if (evals(j) <= tolerance * escale) continue;
    k.ops.push_back(std::sqrt(evals(j)) * unstack(es.eigenvectors().col(j), n));
  }
  return k;
}

inline Superoperator superop_from_kraus(const KrausSet& k) {
  Superoperator s = Superoperator::zero(k.dim);
  for (const auto& op : k.ops) s.mat += sandwich_superop(op, op.adjoint());
  return s;
}

/// Stinespring form: V stacks the Kraus operators vertically, so
/// Phi(rho) = Tr_env(V rho V^dag) with an environment of dimension env_dim,
/// and V^dag V = sum K^dag K (an isometry iff the channel preserves trace).
struct StinespringDilation {
  Matrix isometry;  // (N * env_dim) x N
  int env_dim = 0;

  double isometry_defect() const {
    int n = static_cast<int>(isometry.cols());
    return (isometry.adjoint() * isometry - Matrix::Identity(n, n)).norm();
  }
};

inline StinespringDilation stinespring_dilate(const KrausSet& k) {
  const int n = k.dim;
  const int r = std::max<int>(1, static_cast<int>(k.ops.size()));
  Matrix v = Matrix::Zero(static_cast<Eigen::Index>(n) * r, n);
  for (std::size_t a = 0; a < k.ops.size(); ++a)
    v.block(static_cast<Eigen::Index>(a) * n, 0, n, n) = k.ops[a];
  return {std::move(v), r};
}

struct BlockPositivityResult {
  double min_value = 0.0;
  Vector x;  // argmin, left tensor factor
  Vector y;  // argmin, right tensor factor
  bool heuristic = true;
};

namespace detail {

// Contractions of a Choi-type matrix against one tensor factor. With
// blocks B_ij = C.block(i*n, j*n, n, n):
//   <x (x) y | C | x (x) y> = y^dag M_y(x) y = x^dag M_x(y) x.
inline Matrix contract_left(const Matrix& c, const Vector& x) {
  const int n = static_cast<int>(x.size());
  Matrix m = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m += std::conj(x(i)) * x(j) * c.block(i * n, j * n, n, n);
  return m;
}

inline Matrix contract_right(const Matrix& c, const Vector& y) {
  const int n = static_cast<int>(y.size());
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m(i, j) = (y.adjoint() * c.block(i * n, j * n, n, n) * y).value();
  return m;
}

inline Vector min_eigvec(const Matrix& m, double& value) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(m));
  value = es.eigenvalues()(0);
  return es.eigenvectors().col(0);
}

}  // namespace detail

/// Approximates min over unit product vectors of <x (x) y| C |x (x) y> by
/// multi-start alternating eigen-iteration: fixing one factor makes the
/// other an exact smallest-eigenvector problem. For dim 2 a dense grid over
/// the Bloch sphere of x (129^2 points, y solved exactly) is scanned as well.
/// The verdict is heuristic: a nonnegative result is evidence, not proof.
inline BlockPositivityResult block_positivity_min(const ChoiMatrix& c, int budget = 64,
                                                  std::uint64_t seed = 0x5EED0001) {
  const int n = c.dim;
  struct Pair {
    Vector x, y;
  };
  auto refine = [&](Vector x) -> std::pair<double, Pair> {
    double value = 0.0;
    Vector y = detail::min_eigvec(detail::contract_left(c.mat, x), value);
    for (int it = 0; it < 200; ++it) {
      double vx = 0.0, vy = 0.0;
      x = detail::min_eigvec(detail::contract_right(c.mat, y), vx);
      y = detail::min_eigvec(detail::contract_left(c.mat, x), vy);
      if (std::abs(vy - value) <= 1e-15 * std::max(1.0, std::abs(vy))) {
        value = vy;
        break;
      }
      value = vy;
    }
    return {value, Pair{x, y}};
  };

  auto [best, pair] = multistart_min<Pair>(std::max(1, budget), [&](int r) {
    std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(r)));
    return refine(random_unit_vector(n, rng));
  });

  if (n == 2) {
    const int res = 129;
    for (int a = 0; a < res; ++a) {
      double theta = pi * a / (res - 1);
      for (int b = 0; b < res; ++b) {
        double phi = 2.0 * pi * b / res;
        Vector x(2);
        x << std::cos(theta / 2.0), std::polar(std::sin(theta / 2.0), phi);
        double value = 0.0;
        detail::min_eigvec(detail::contract_left(c.mat, x), value);
        if (value < best) {
          auto [v2, p2] = refine(x);  // alternation only decreases the value
          best = v2;
          pair = p2;
        }
      }
    }
  }
  return {best, pair.x, pair.y, true};
}

/// Monte-Carlo evidence oracle for k-positivity: samples random |w>, |z> in
/// C^k (x) C^N and returns the smallest observed <z|(id_k (x) Phi)(|w><w|)|z>.
/// A negative sample certifies that the k-amplification is not positive; a
/// nonnegative minimum is evidence only. k = N suffices to probe complete
/// positivity in dimension N.
inline double k_positivity_oracle(const Superoperator& s, int k, int samples,
                                  std::uint64_t seed = 0x5EED0002) {
  if (k < 1) throw error("k_positivity_oracle: k must be at least 1");
  const int n = s.dim;
  std::mt19937_64 rng(seed);
  double worst = std::numeric_limits<double>::infinity();
  for (int t = 0; t < samples; ++t) {
    Vector w = random_unit_vector(k * n, rng);
    Vector z = random_unit_vector(k * n, rng);
    Complex acc = 0.0;
    for (int a = 0; a < k; ++a) {
      for (int b = 0; b < k; ++b) {
        Matrix block = w.segment(a * n, n) * w.segment(b * n, n).adjoint();
        acc += (z.segment(a * n, n).adjoint() * s.apply(block) * z.segment(b * n, n)).value();
      }
    }
    worst = std::min(worst, acc.real());
  }
  return worst;
}

/// Evolution matrix A (indexed (rs),(r's')) together with its realignment
/// B_{rr',ss'} = A_{rs,r's'} (indexed (rr'),(ss')); B is the Choi-type
/// dynamical matrix of the map A describes.
struct DynamicalMatrixPair {
  Matrix a;
  Matrix b;
};

/// Pure index permutation, exact and involutive: realign(realign(A).b).b == A.
inline DynamicalMatrixPair realign(const Matrix& a) {
  const auto n2 = a.rows();
  int n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n2))));
  if (static_cast<Eigen::Index>(n) * n != n2 || a.cols() != n2)
    throw dimension_error("realign: matrix must be N^2 square");
  return {a, choi_reshuffle(a, n)};
}

struct SmrReport {
  double hermiticity_defect = 0.0;       // A_{sr,s'r'} vs conj(A_{rs,r's'})
  double trace_defect = 0.0;             // sum_r A_{rr,r's'} vs delta_{r's'}
  double block_positivity_min = 0.0;     // product-vector minimum of B
  bool block_positive = false;           // heuristic verdict
  double psd_min_eigenvalue = 0.0;       // smallest eigenvalue of B
  bool psd = false;                      // the stronger (complete-positivity) condition
  bool heuristic = true;
};

/// Checks the three conditions on an evolution matrix A: Hermiticity
/// preservation, positivity on product vectors of the realigned matrix
/// (block positivity), and trace preservation. Both the block-positivity
/// condition and the strictly stronger spectral positivity of B are
/// reported, since they differ exactly on maps that are positive but not
/// completely positive.
inline SmrReport smr_conditions(const Matrix& a, int budget = 64,
                                std::uint64_t seed = 0x5EED0003,
                                double tolerance = tol::psd) {
  DynamicalMatrixPair pair = realign(a);
  const int n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(a.rows()))));
  Superoperator s{n, pair.a};
  SmrReport report;
  report.hermiticity_defect = s.hermiticity_preservation_defect();
  Vector id = stack(Matrix::Identity(n, n));
  report.trace_defect = ((id.adjoint() * pair.a).transpose() - id.conjugate()).cwiseAbs().maxCoeff();
  double scale = std::max(1.0, pair.b.norm());
  BlockPositivityResult bp = block_positivity_min(ChoiMatrix{n, pair.b}, budget, seed);
  report.block_positivity_min = bp.min_value;
  report.block_positive = bp.min_value >= -tolerance * scale;
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(pair.b), Eigen::EigenvaluesOnly);
  report.psd_min_eigenvalue = es.eigenvalues().minCoeff();
  report.psd = report.psd_min_eigenvalue >= -tolerance * scale;
  return report;
}

struct SmrDecomposition {
  std::vector<double> weights;  // mu_a >= 0
  std::vector<Matrix> ops;      // W_a, unit Hilbert-Schmidt norm
};

/// Decomposes a positive-semidefinite dynamical matrix as
/// B = sum_a mu_a vec(W_a) vec(W_a)^dag, the channel form sum mu_a W rho W^dag.
/// Block-positive matrices that are not positive semidefinite admit no such
/// nonnegative decomposition; they describe maps that are positive but not
/// completely positive, and this routine rejects them.
inline SmrDecomposition smr_decompose(const Matrix& b, double tolerance = tol::psd) {
  const auto n2 = b.rows();
  int n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n2))));
  if (static_cast<Eigen::Index>(n) * n != n2 || b.cols() != n2)
    throw dimension_error("smr_decompose: matrix must be N^2 square");
  double scale = std::max(1.0, b.norm());
  if (hermiticity_defect(b) > tol::hermiticity * scale)
    throw error("smr_decompose: dynamical matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(b));
  const auto& evals = es.eigenvalues();
  double escale = std::max(1.0, evals.cwiseAbs().maxCoeff());
  if (evals.minCoeff() < -tolerance * escale)
    throw not_positive_error(
        "smr_decompose: dynamical matrix is not positive semidefinite; it is at "
        "best block-positive, and no decomposition with nonnegative weights exists",
        evals.minCoeff());
  SmrDecomposition d;
  for (int j = 0; j < evals.size(); ++j) {
    if (evals(j) <= tolerance * escale) continue;
    d.weights.push_back(evals(j));
    d.ops.push_back(unstack(es.eigenvectors().col(j), n));
  }
  return d;
}

}  // namespace sgforge
