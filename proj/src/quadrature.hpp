// Copyright 2026 The qdivide Authors
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

#include <cmath>
#include <cstddef>

namespace qdivide::detail {

/// First node of the three-point stencil covering interval [x_i, x_{i+1}].
/// Intervals are grouped in pairs (composite Simpson); a trailing odd
/// interval borrows the last three nodes. With two nodes the stencil is
/// linear and starts at 0.
inline std::size_t quadratic_base(std::size_t n, std::size_t interval) {
  if (n < 3) return 0;
  std::size_t base = 2 * (interval / 2);
  if (base + 2 > n - 1) base = n - 3;
  return base;
}

/// Integral over [a, b] of the polynomial interpolating (x0,f0),(x1,f1),(x2,f2),
/// or of the line through the first two points when `linear` is set.
/// Two-point Gauss-Legendre is exact for these degrees.
inline double stencil_integral(const double* x, double f0, double f1, double f2, double a,
                               double b, bool linear) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double off = half / std::sqrt(3.0);
  auto eval = [&](double t) {
    if (linear) return f0 + (f1 - f0) * (t - x[0]) / (x[1] - x[0]);
    const double l0 = (t - x[1]) * (t - x[2]) / ((x[0] - x[1]) * (x[0] - x[2]));
    const double l1 = (t - x[0]) * (t - x[2]) / ((x[1] - x[0]) * (x[1] - x[2]));
    const double l2 = (t - x[0]) * (t - x[1]) / ((x[2] - x[0]) * (x[2] - x[1]));
    return f0 * l0 + f1 * l1 + f2 * l2;
  };
  return half * (eval(mid - off) + eval(mid + off));
}

}  // namespace qdivide::detail
