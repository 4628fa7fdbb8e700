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

#include <optional>

namespace sgforge {

/// Truncated bosonic mode: annihilation operator a with a|n> = sqrt(n)|n-1>
/// on the lowest D Fock levels. Every claim about a truncated mode comes with
/// a leakage monitor on the top levels, since the untruncated operators are
/// unbounded.
struct FockSpec {
  int truncation = 0;

  static FockSpec make(int d) {
    if (d < 2) throw dimension_error("FockSpec: truncation must be at least 2");
    return {d};
  }

  Matrix annihilation() const {
    Matrix a = Matrix::Zero(truncation, truncation);
    for (int n = 1; n < truncation; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
  }

  Matrix number() const {
    Matrix n = Matrix::Zero(truncation, truncation);
    for (int k = 0; k < truncation; ++k) n(k, k) = static_cast<double>(k);
    return n;
  }
};

// Combined population of the top two truncated levels; must stay small for a
// truncated-mode result to be trusted.
inline double fock_leakage(const Matrix& rho) {
  const auto d = rho.rows();
  if (d < 2) return 0.0;
  return std::abs(rho(d - 1, d - 1)) + std::abs(rho(d - 2, d - 2));
}

namespace detail {

// Clamped cubic spline through (grid, y); end slopes from one-sided
// three-point differences. Complex values, shared real grid.
class CubicSpline {
 public:
  CubicSpline() = default;
  CubicSpline(std::vector<double> grid, std::vector<Complex> y)
      : x_(std::move(grid)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n < 2 || y_.size() != n) throw error("CubicSpline: need matching grids of size >= 2");
    for (std::size_t i = 1; i < n; ++i)
      if (x_[i] <= x_[i - 1]) throw error("CubicSpline: grid must be strictly increasing");
    m_.assign(n, Complex(0.0));
    if (n == 2) return;  // degenerate: linear
    Complex s0 = end_slope(0);
    Complex s1 = end_slope(1);
    std::vector<double> diag(n), sub(n), sup(n);
    std::vector<Complex> rhs(n);
    auto h = [&](std::size_t i) { return x_[i + 1] - x_[i]; };
    diag[0] = 2.0 * h(0);
    sup[0] = h(0);
    rhs[0] = 6.0 * ((y_[1] - y_[0]) / h(0) - s0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      sub[i] = h(i - 1);
      diag[i] = 2.0 * (h(i - 1) + h(i));
      sup[i] = h(i);
      rhs[i] = 6.0 * ((y_[i + 1] - y_[i]) / h(i) - (y_[i] - y_[i - 1]) / h(i - 1));
    }
    sub[n - 1] = h(n - 2);
    diag[n - 1] = 2.0 * h(n - 2);
    rhs[n - 1] = 6.0 * (s1 - (y_[n - 1] - y_[n - 2]) / h(n - 2));
    // Thomas algorithm
    for (std::size_t i = 1; i < n; ++i) {
      double w = sub[i] / diag[i - 1];
      diag[i] -= w * sup[i - 1];
      rhs[i] -= w * rhs[i - 1];
    }
    m_[n - 1] = rhs[n - 1] / diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) m_[i] = (rhs[i] - sup[i] * m_[i + 1]) / diag[i];
  }

  double min_x() const { return x_.front(); }
  double max_x() const { return x_.back(); }

  Complex operator()(double x) const {
    if (x < x_.front() - 1e-12 || x > x_.back() + 1e-12)
      throw error("CubicSpline: query outside the tabulated range");
    x = std::clamp(x, x_.front(), x_.back());
    std::size_t i = upper_interval(x);
    double h = x_[i + 1] - x_[i];
    double u = (x_[i + 1] - x) / h;
    double v = (x - x_[i]) / h;
    return u * y_[i] + v * y_[i + 1] +
           ((u * u * u - u) * m_[i] + (v * v * v - v) * m_[i + 1]) * (h * h) / 6.0;
  }

 private:
  Complex end_slope(int which) const {
    const std::size_t n = x_.size();
    if (n == 2) return (y_[1] - y_[0]) / (x_[1] - x_[0]);
    if (which == 0) {
      double h0 = x_[1] - x_[0], h1 = x_[2] - x_[1];
      return -(2.0 * h0 + h1) / (h0 * (h0 + h1)) * y_[0] +
             (h0 + h1) / (h0 * h1) * y_[1] - h0 / (h1 * (h0 + h1)) * y_[2];
    }
    double h0 = x_[n - 2] - x_[n - 3], h1 = x_[n - 1] - x_[n - 2];
    return h1 / (h0 * (h0 + h1)) * y_[n - 3] - (h0 + h1) / (h0 * h1) * y_[n - 2] +
           (2.0 * h1 + h0) / (h1 * (h0 + h1)) * y_[n - 1];
  }

  std::size_t upper_interval(double x) const {
    auto it = std::upper_bound(x_.begin(), x_.end(), x);
    std::size_t i = static_cast<std::size_t>(it - x_.begin());
    if (i == 0) return 0;
    if (i >= x_.size()) return x_.size() - 2;
    return i - 1;
  }

  std::vector<double> x_;
  std::vector<Complex> y_;
  std::vector<Complex> m_;  // spline moments (second derivatives)
};

template <typename F>
Complex adaptive_simpson_rec(const F& f, double a, double b, Complex fa, Complex fm,
                             Complex fb, Complex whole, double tolerance, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  Complex flm = f(lm), frm = f(rm);
  Complex left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  Complex right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  Complex delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tolerance)
    return left + right + delta / 15.0;
  return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tolerance, depth - 1) +
         adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tolerance, depth - 1);
}

template <typename F>
Complex adaptive_simpson(const F& f, double a, double b, double tolerance) {
  if (b <= a) return Complex(0.0);
  Complex fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  Complex whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tolerance, 40);
}

}  // namespace detail

/// Tabulated matrix-valued function of one real variable (bath correlation
/// h_ab(tau) or spectral density h-hat_ab(omega)), interpolated entrywise
/// with a clamped cubic spline.
class MatrixTable {
 public:
  MatrixTable() = default;
  MatrixTable(std::vector<double> grid, std::vector<Matrix> values) {
    if (grid.size() != values.size() || grid.size() < 2)
      throw error("MatrixTable: need matching grid and values, at least 2 points");
    rows_ = static_cast<int>(values.front().rows());
    cols_ = static_cast<int>(values.front().cols());
    for (const auto& v : values)
      if (v.rows() != rows_ || v.cols() != cols_)
        throw dimension_error("MatrixTable: inconsistent matrix sizes");
    splines_.reserve(static_cast<std::size_t>(rows_) * cols_);
    for (int r = 0; r < rows_; ++r) {
      for (int c = 0; c < cols_; ++c) {
        std::vector<Complex> y(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) y[i] = values[i](r, c);
        splines_.emplace_back(grid, std::move(y));
      }
    }
    grid_ = std::move(grid);
    values_ = std::move(values);
  }

  bool empty() const { return splines_.empty(); }
  int rows() const { return rows_; }
  double min_x() const { return grid_.front(); }
  double max_x() const { return grid_.back(); }
  const std::vector<double>& grid() const { return grid_; }
  const std::vector<Matrix>& values() const { return values_; }

  bool covers(double x) const { return x >= grid_.front() - 1e-12 && x <= grid_.back() + 1e-12; }

  Matrix operator()(double x) const {
    Matrix out(rows_, cols_);
    for (int r = 0; r < rows_; ++r)
      for (int c = 0; c < cols_; ++c)
        out(r, c) = splines_[static_cast<std::size_t>(r) * cols_ + c](x);
    return out;
  }

  Complex entry(int r, int c, double x) const {
    return splines_[static_cast<std::size_t>(r) * cols_ + c](x);
  }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<double> grid_;
  std::vector<Matrix> values_;
  std::vector<detail::CubicSpline> splines_;
};

/// Bath description: either a time-domain correlation table h_ab(tau) or a
/// frequency-domain spectral table h-hat_ab(omega), optionally with a
/// tabulated Lamb-shift kernel s_ab(omega). Frequency-domain tables must be
/// Hermitian positive semidefinite at every grid point.
struct BathSpec {
  enum class Domain { time, frequency };

  Domain domain = Domain::time;
  MatrixTable table;
  std::optional<MatrixTable> lamb;

  int couplings() const { return table.rows(); }

  static BathSpec time_domain(std::vector<double> grid, std::vector<Matrix> values) {
    return {Domain::time, MatrixTable(std::move(grid), std::move(values)), std::nullopt};
  }

  static BathSpec frequency_domain(std::vector<double> grid, std::vector<Matrix> values,
                                   std::optional<MatrixTable> lamb_table = std::nullopt) {
    MatrixTable t(std::move(grid), std::move(values));
    for (std::size_t i = 0; i < t.values().size(); ++i) {
      const Matrix& m = t.values()[i];
      double scale = std::max(1.0, m.norm());
      if (hermiticity_defect(m) > tol::psd * scale)
        throw error("BathSpec: spectral matrix is not Hermitian at a grid point");
      double lo = min_eigenvalue(m);
      if (lo < -tol::psd * scale)
        throw not_positive_error("BathSpec: spectral matrix is not positive semidefinite "
                                 "at a grid point", lo);
    }
    return {Domain::frequency, std::move(t), std::move(lamb_table)};
  }
};

// --- the zoo ------------------------------------------------------------------

/// Damped mode: L rho = gamma (a rho a^dag - 1/2 {a^dag a, rho}); the single
/// jump sqrt(gamma) a. Completely positive by construction.
inline LindbladGenerator landau_generator(const FockSpec& f, double gamma) {
  if (gamma <= 0.0) throw error("landau_generator: damping rate must be positive");
  Matrix h = Matrix::Zero(f.truncation, f.truncation);
  return LindbladGenerator{std::move(h), {std::sqrt(gamma) * f.annihilation()}};
}

/// Non-Hermitian-Hamiltonian absorption: L rho = -i[H, rho] - (V rho + rho V)
/// with V >= 0. No jump term, so the trace decays; that is the model, not a
/// bug. V with a negative eigenvalue is rejected: it would create probability.
inline Superoperator optical_potential_generator(const Matrix& h, const Matrix& v) {
  if (h.rows() != h.cols() || v.rows() != v.cols() || h.rows() != v.rows())
    throw dimension_error("optical_potential_generator: dimension mismatch");
  double scale = std::max(1.0, v.norm());
  if (hermiticity_defect(v) > tol::structural * scale)
    throw error("optical_potential_generator: potential is not Hermitian");
  double lo = min_eigenvalue(v);
  if (lo < -tol::psd * scale)
    throw not_positive_error(
        "optical_potential_generator: potential has a negative eigenvalue, which "
        "would let probability grow", lo);
  int n = static_cast<int>(h.rows());
  return {n, commutator_superop(h) - left_mult_superop(v) - right_mult_superop(v)};
}

/// Two-level decay without a refilling term:
/// L rho = -i[H, rho] - 1/2 (Gamma rho + rho Gamma), Gamma = diag(gamma1, gamma2).
/// Trace strictly decreases for positive rates.
inline Superoperator lamb_generator(const Matrix& h, double gamma1, double gamma2) {
  if (h.rows() != 2 || h.cols() != 2)
    throw dimension_error("lamb_generator: Hamiltonian must be 2x2");
  if (gamma1 <= 0.0 || gamma2 <= 0.0)
    throw error("lamb_generator: decay rates must be positive");
  Matrix gamma = Matrix::Zero(2, 2);
  gamma(0, 0) = gamma1;
  gamma(1, 1) = gamma2;
  return {2, commutator_superop(h) -
                 0.5 * (left_mult_superop(gamma) + right_mult_superop(gamma))};
}

/// Completes the two-level decay with a refilling channel Phi whose dual maps
/// the identity to Gamma, turning it into a trace-preserving completely
/// positive generator. The default channel lowers with rate gamma1 and raises
/// with rate gamma2; any Kraus set with sum K^dag K = Gamma is accepted.
inline LindbladGenerator cure_lamb(const Matrix& h, double gamma1, double gamma2,
                                   std::optional<std::vector<Matrix>> refill = std::nullopt) {
  if (h.rows() != 2 || h.cols() != 2)
    throw dimension_error("cure_lamb: Hamiltonian must be 2x2");
  std::vector<Matrix> jumps;
  if (refill.has_value()) {
    jumps = std::move(*refill);
  } else {
    Matrix k1 = Matrix::Zero(2, 2), k2 = Matrix::Zero(2, 2);
    k1(1, 0) = std::sqrt(gamma1);
    k2(0, 1) = std::sqrt(gamma2);
    jumps = {std::move(k1), std::move(k2)};
  }
  Matrix acc = Matrix::Zero(2, 2);
  for (const auto& k : jumps) {
    if (k.rows() != 2 || k.cols() != 2)
      throw dimension_error("cure_lamb: refill Kraus operators must be 2x2");
    acc += k.adjoint() * k;
  }
  Matrix gamma = Matrix::Zero(2, 2);
  gamma(0, 0) = gamma1;
  gamma(1, 1) = gamma2;
  if ((acc - gamma).norm() > 1e-9 * std::max(1.0, gamma.norm()))
    throw error("cure_lamb: refill channel does not match the decay rates "
                "(sum K^dag K != Gamma)");
  return LindbladGenerator{h, std::move(jumps)};
}

/// Field-mode relaxation with gain: jumps sqrt(2 nu) b and sqrt(2 delta) b^dag
/// and Hamiltonian omega b^dag b. Requires net damping nu > delta >= 0; the
/// stationary occupation is delta / (nu - delta).
inline LindbladGenerator laser_generator(const FockSpec& f, double nu, double delta,
                                         double omega = 0.0) {
  if (!(nu > delta && delta >= 0.0))
    throw error("laser_generator: need nu > delta >= 0 for a stationary mode");
  Matrix b = f.annihilation();
  std::vector<Matrix> jumps;
  jumps.push_back(std::sqrt(2.0 * nu) * b);
  if (delta > 0.0) jumps.push_back(std::sqrt(2.0 * delta) * b.adjoint());
  return LindbladGenerator{omega * f.number(), std::move(jumps)};
}

/// Same mode with the gain fixed by detailed balance at temperature T:
/// delta = exp(-omega/T) nu.
inline LindbladGenerator laser_generator_thermal(const FockSpec& f, double nu, double omega,
                                                 double temperature) {
  if (omega <= 0.0 || temperature <= 0.0)
    throw error("laser_generator_thermal: omega and temperature must be positive");
  double delta = std::exp(-omega / temperature) * nu;
  return laser_generator(f, nu, delta, omega);
}

inline double thermal_occupation(double nu, double delta) {
  if (!(nu > delta)) throw error("thermal_occupation: need nu > delta");
  return delta / (nu - delta);
}

/// Gibbs state e^{-H/T} / Z.
inline Matrix gibbs_state(const Matrix& h, double temperature) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(h));
  Eigen::VectorXd w = (-es.eigenvalues().array() / temperature).exp();
  w /= w.sum();
  return es.eigenvectors() * w.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
}

/// Born-Markov master equation without the secular approximation:
///
///   d rho/dt = -i[H, rho] - sum_a [V_a, X_a rho - rho X_a^dag],
///   X_a = sum_b int_0^tau_max h_ab(tau) e^{-iH tau} V_b e^{iH tau} dtau.
///
/// Trace- and Hermiticity-preserving by construction; positivity of the
/// evolved state is NOT guaranteed, and that failure is physical output.
inline Superoperator redfield_generator(const Matrix& h, const std::vector<Matrix>& couplings,
                                        const BathSpec& bath, double tau_max,
                                        double quad_tol = 1e-10) {
  if (bath.domain != BathSpec::Domain::time)
    throw error("redfield_generator: needs a time-domain correlation table");
  const int n = static_cast<int>(h.rows());
  const int m = static_cast<int>(couplings.size());
  if (bath.couplings() != m)
    throw dimension_error("redfield_generator: bath table size does not match couplings");
  if (!bath.table.covers(tau_max))
    throw error("redfield_generator: correlation table does not cover tau_max");
  if (bath.table.min_x() > 0.0)
    throw error("redfield_generator: correlation table must start at tau = 0");
  double h0 = bath.table(0.0).norm();
  if (bath.table(tau_max).norm() > std::max(quad_tol, 1e-6) * std::max(1.0, h0))
    throw error("redfield_generator: correlation has not decayed by tau_max; "
                "enlarge the window or retabulate");

  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(h));
  const Matrix& u = es.eigenvectors();
  Eigen::VectorXd lam = es.eigenvalues();

  std::vector<Matrix> x(static_cast<std::size_t>(m), Matrix::Zero(n, n));
  for (int alpha = 0; alpha < m; ++alpha) {
    Matrix acc = Matrix::Zero(n, n);
    for (int beta = 0; beta < m; ++beta) {
      Matrix c = u.adjoint() * couplings[static_cast<std::size_t>(beta)] * u;
      for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
          if (c(a, b) == Complex(0.0)) continue;
          double w = lam(a) - lam(b);
          Complex integral = detail::adaptive_simpson(
              [&](double tau) {
                return bath.table.entry(alpha, beta, tau) * std::polar(1.0, -w * tau);
              },
              0.0, tau_max, quad_tol);
          acc(a, b) += integral * c(a, b);
        }
      }
    }
    x[static_cast<std::size_t>(alpha)] = u * acc * u.adjoint();
  }

  Matrix out = commutator_superop(h);
  for (int alpha = 0; alpha < m; ++alpha) {
    const Matrix& v = couplings[static_cast<std::size_t>(alpha)];
    const Matrix& xa = x[static_cast<std::size_t>(alpha)];
    out -= left_mult_superop(v * xa) - sandwich_superop(v, xa.adjoint()) -
           sandwich_superop(xa, v) + right_mult_superop(xa.adjoint() * v);
  }
  return {n, std::move(out)};
}

/// One Bohr-frequency sector of a weak-coupling generator: the frequency, the
/// coupling components V_a(omega), and the sector's coefficient block
/// (1/2) h-hat_ab(omega).
struct DaviesBlock {
  double omega = 0.0;
  std::vector<Matrix> components;
  Matrix coefficient_block;
};

struct DaviesGenerator {
  Superoperator superop;          // -i[H + H_LS, .] + secular dissipator
  Matrix lamb_shift;              // commutes with H by construction
  std::vector<DaviesBlock> blocks;
  double min_block_eigenvalue = 0.0;

  bool gkls(double tolerance = tol::psd) const {
    return min_block_eigenvalue >= -tolerance;
  }
};

struct DaviesOptions {
  double gap_tol = 1e-9;     // relative eigenvalue-clustering tolerance
  bool lamb_shift = true;    // compute/apply the principal-value shift
  double pv_tol = 1e-9;      // convergence tolerance of the excision scan
};

namespace detail {

// Principal-value integral (1/2pi) P int h(xi)/(xi - w) dxi over the table
// range, by symmetric excision around the pole with the radius halved until
// the value settles.
inline Complex principal_value_shift(const CubicSpline& spline, double lo, double hi,
                                     double w, double tolerance) {
  double room = std::min(w - lo, hi - w);
  if (room <= 0.0)
    throw error("principal_value_shift: Bohr frequency at the edge of the spectral table");
  auto f = [&](double xi) { return spline(xi) / (xi - w); };
  Complex prev(0.0);
  for (int k = 0; k < 24; ++k) {
    double eps = room / std::pow(2.0, k + 2);
    Complex val = adaptive_simpson(f, lo, w - eps, tolerance) +
                  adaptive_simpson(f, w + eps, hi, tolerance);
    if (k > 0 && std::abs(val - prev) <= tolerance * std::max(1.0, std::abs(val)))
      return val / (2.0 * pi);
    prev = val;
  }
  return prev / (2.0 * pi);
}

}  // namespace detail

/// Weak-coupling (secular) generator. Eigenvalues of H are clustered with a
/// relative gap tolerance so numerical degeneracies do not split a secular
/// block; couplings are decomposed over Bohr frequencies,
/// V_a(w) = sum_{e'-e=w} P(e) V_a P(e'), and each frequency contributes a
/// dissipator with coefficient block (1/2) h-hat_ab(w) plus a Lamb-shift
/// Hamiltonian from s_ab(w) (tabulated, or principal-value quadrature of the
/// spectral table). The spectral table must cover every Bohr frequency.
inline DaviesGenerator davies_generator(const Matrix& h, const std::vector<Matrix>& couplings,
                                        const BathSpec& bath, const DaviesOptions& opt = {}) {
  if (bath.domain != BathSpec::Domain::frequency)
    throw error("davies_generator: needs a frequency-domain spectral table");
  const int n = static_cast<int>(h.rows());
  const int m = static_cast<int>(couplings.size());
  if (bath.couplings() != m)
    throw dimension_error("davies_generator: bath table size does not match couplings");

  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(h));
  Eigen::VectorXd lam = es.eigenvalues();
  const Matrix& u = es.eigenvectors();
  const double scale = std::max(1.0, lam.cwiseAbs().maxCoeff());

  // Cluster eigenvalues into energy groups.
  std::vector<std::pair<double, std::vector<int>>> groups;
  for (int i = 0; i < n; ++i) {
    if (!groups.empty() && lam(i) - groups.back().first <= opt.gap_tol * scale) {
      groups.back().second.push_back(i);
    } else {
      groups.push_back({lam(i), {i}});
    }
  }
  auto projector = [&](const std::vector<int>& idx) {
    Matrix p = Matrix::Zero(n, n);
    for (int i : idx) p += u.col(i) * u.col(i).adjoint();
    return p;
  };

  // Bohr frequencies from ordered group pairs, clustered with the same tolerance.
  struct Sector {
    double omega;
    std::vector<std::pair<int, int>> pairs;  // (lower group, upper group)
  };
  std::vector<Sector> sectors;
  for (std::size_t g1 = 0; g1 < groups.size(); ++g1) {
    for (std::size_t g2 = 0; g2 < groups.size(); ++g2) {
      double w = groups[g2].first - groups[g1].first;
      bool found = false;
      for (auto& sec : sectors) {
        if (std::abs(sec.omega - w) <= opt.gap_tol * scale) {
          sec.pairs.push_back({static_cast<int>(g1), static_cast<int>(g2)});
          found = true;
          break;
        }
      }
      if (!found) sectors.push_back({w, {{static_cast<int>(g1), static_cast<int>(g2)}}});
    }
  }
  std::sort(sectors.begin(), sectors.end(),
            [](const Sector& a, const Sector& b) { return a.omega < b.omega; });

  DaviesGenerator out;
  Matrix dissipator = Matrix::Zero(n * n, n * n);
  Matrix lamb_shift = Matrix::Zero(n, n);
  double min_block = std::numeric_limits<double>::infinity();

  for (const auto& sec : sectors) {
    if (!bath.table.covers(sec.omega))
      throw error("davies_generator: spectral table does not cover Bohr frequency " +
                  std::to_string(sec.omega));
    // V_a(omega)
    std::vector<Matrix> comps(static_cast<std::size_t>(m), Matrix::Zero(n, n));
    bool nonzero = false;
    for (int alpha = 0; alpha < m; ++alpha) {
      for (const auto& [g1, g2] : sec.pairs) {
        comps[static_cast<std::size_t>(alpha)] +=
            projector(groups[static_cast<std::size_t>(g1)].second) *
            couplings[static_cast<std::size_t>(alpha)] *
            projector(groups[static_cast<std::size_t>(g2)].second);
      }
      if (comps[static_cast<std::size_t>(alpha)].norm() > 1e-14) nonzero = true;
    }
    if (!nonzero) continue;

    Matrix hhat = hermitian_part(bath.table(sec.omega));
    min_block = std::min(min_block, min_eigenvalue(hhat));

    for (int alpha = 0; alpha < m; ++alpha) {
      const Matrix& va = comps[static_cast<std::size_t>(alpha)];
      for (int beta = 0; beta < m; ++beta) {
        const Matrix& vb = comps[static_cast<std::size_t>(beta)];
        Complex rate = hhat(alpha, beta);
        if (rate != Complex(0.0)) {
          Matrix vbva = vb.adjoint() * va;
          dissipator += rate * (sandwich_superop(va, vb.adjoint()) -
                                0.5 * (left_mult_superop(vbva) + right_mult_superop(vbva)));
        }
        if (opt.lamb_shift) {
          Complex s;
          if (bath.lamb.has_value()) {
            if (!bath.lamb->covers(sec.omega))
              throw error("davies_generator: Lamb-shift table does not cover Bohr frequency " +
                          std::to_string(sec.omega));
            s = bath.lamb->entry(alpha, beta, sec.omega);
          } else {
            const auto& grid = bath.table.grid();
            std::vector<Complex> y(grid.size());
            for (std::size_t i = 0; i < grid.size(); ++i)
              y[i] = bath.table.values()[i](alpha, beta);
            detail::CubicSpline spline(grid, std::move(y));
            s = detail::principal_value_shift(spline, bath.table.min_x(), bath.table.max_x(),
                                              sec.omega, opt.pv_tol);
          }
          if (s != Complex(0.0)) lamb_shift += s * vb.adjoint() * va;
        }
      }
    }
    out.blocks.push_back({sec.omega, std::move(comps), 0.5 * hhat});
  }

  lamb_shift = hermitian_part(lamb_shift);
  out.lamb_shift = lamb_shift;
  out.min_block_eigenvalue = std::isfinite(min_block) ? min_block : 0.0;
  out.superop = Superoperator{n, commutator_superop(hermitian_part(h) + lamb_shift) + dissipator};
  return out;
}

struct BelavinGenerator {
  Superoperator superop;
  double min_rate_eigenvalue = 0.0;

  bool gkls(double tolerance = tol::psd) const {
    return min_rate_eigenvalue >= -tolerance;
  }
};

/// Multi-channel kinetic equation
///   L rho = (1/2) sum_ij gamma_ij (2 A_i rho A_j^dag - A_j^dag A_i rho - rho A_j^dag A_i);
/// complete positivity is exactly positivity of the rate matrix [gamma_ij].
inline BelavinGenerator belavin_generator(const std::vector<Matrix>& ops, const Matrix& rates) {
  const int m = static_cast<int>(ops.size());
  if (rates.rows() != m || rates.cols() != m)
    throw dimension_error("belavin_generator: rate matrix size does not match operators");
  if (m == 0) throw error("belavin_generator: need at least one operator");
  if (hermiticity_defect(rates) > tol::structural * std::max(1.0, rates.norm()))
    throw error("belavin_generator: rate matrix must be Hermitian");
  const int n = static_cast<int>(ops.front().rows());
  Matrix out = Matrix::Zero(n * n, n * n);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      Complex g = rates(i, j);
      if (g == Complex(0.0)) continue;
      Matrix aji = ops[static_cast<std::size_t>(j)].adjoint() * ops[static_cast<std::size_t>(i)];
      out += g * (sandwich_superop(ops[static_cast<std::size_t>(i)],
                                   ops[static_cast<std::size_t>(j)].adjoint()) -
                  0.5 * (left_mult_superop(aji) + right_mult_superop(aji)));
    }
  }
  double lo = 0.0;
  {
    Eigen::SelfAdjointEigenSolver<Matrix> res(hermitian_part(rates), Eigen::EigenvaluesOnly);
    lo = res.eigenvalues().minCoeff();
  }
  return {Superoperator{n, std::move(out)}, lo};
}

/// Diagonal qubit family L rho = sum_k gamma_k (sigma_k rho sigma_k - rho),
/// stated in the rates of that normalization; in the orthonormal Pauli/sqrt(2)
/// basis the stored coefficient matrix is diag(2 gamma_1, 2 gamma_2, 2 gamma_3).
inline GksGenerator pauli_example_generator(double gamma1, double gamma2, double gamma3) {
  OperatorBasis basis = gell_mann_basis(2);
  Matrix c = Matrix::Zero(3, 3);
  c(0, 0) = 2.0 * gamma1;
  c(1, 1) = 2.0 * gamma2;
  c(2, 2) = 2.0 * gamma3;
  return GksGenerator{Matrix::Zero(2, 2), std::move(c), std::move(basis)};
}

}  // namespace sgforge
