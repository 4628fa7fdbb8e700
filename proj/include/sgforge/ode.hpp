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

#include <functional>

namespace sgforge {

struct OdeOptions {
  double rtol = 1e-9;
  double atol = 1e-12;
  double safety = 0.9;
  double min_scale = 0.2;
  double max_scale = 5.0;
  long max_steps = 2'000'000;
};

// Dormand-Prince embedded Runge-Kutta 5(4) with FSAL, adaptive step size.
// Integrates y' = f(t, y) from t0 to t1 on complex state vectors. Throws
// stiffness_error on step-size underflow or when the step budget runs out;
// the exact propagator is the fallback in that regime.
inline Vector rk45_integrate(const std::function<Vector(double, const Vector&)>& f,
                             Vector y, double t0, double t1,
                             const OdeOptions& opt = {}) {
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                          a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                          a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                          e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;

  if (t1 < t0) throw error("rk45_integrate: backward integration not supported");
  if (t1 == t0) return y;

  double t = t0;
  Vector k1 = f(t, y);

  // First step from the scale of y and y'.
  double ynorm = y.norm();
  double fnorm = k1.norm();
  double h = (fnorm > 0.0) ? 0.01 * std::max(ynorm, 1.0) / fnorm : 1e-3 * (t1 - t0);
  h = std::min(h, t1 - t0);

  const double hmin_rel = 16.0 * std::numeric_limits<double>::epsilon();
  long steps = 0;
  while (t < t1) {
    if (++steps > opt.max_steps)
      throw stiffness_error("rk45_integrate: step budget exhausted, the problem "
                            "appears stiff at this tolerance; use the exact propagator");
    if (h < hmin_rel * std::max(std::abs(t), std::abs(t1)))
      throw stiffness_error("rk45_integrate: step size underflow, the problem "
                            "appears stiff at this tolerance; use the exact propagator");
    bool last = false;
    if (t + h >= t1) {
      h = t1 - t;
      last = true;
    }

    Vector k2 = f(t + c2 * h, y + h * (a21 * k1));
    Vector k3 = f(t + c3 * h, y + h * (a31 * k1 + a32 * k2));
    Vector k4 = f(t + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
    Vector k5 = f(t + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    Vector k6 = f(t + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    Vector ynew = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    Vector k7 = f(t + h, ynew);
    Vector err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    double norm = 0.0;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
      double scale = opt.atol + opt.rtol * std::max(std::abs(y(i)), std::abs(ynew(i)));
      double q = std::abs(err(i)) / scale;
      norm += q * q;
    }
    norm = std::sqrt(norm / static_cast<double>(y.size()));

    if (norm <= 1.0) {
      t = last ? t1 : t + h;
      y = std::move(ynew);
      k1 = std::move(k7);
    }
    double scale = (norm > 0.0)
                       ? opt.safety * std::pow(norm, -0.2)
                       : opt.max_scale;
    h *= std::clamp(scale, opt.min_scale, opt.max_scale);
  }
  return y;
}

}  // namespace sgforge
