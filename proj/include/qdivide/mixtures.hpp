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

#include <array>
#include <limits>
#include <span>
#include <vector>

#include "qdivide/rate_model.hpp"

namespace qdivide {

inline constexpr double kInfiniteTime = std::numeric_limits<double>::infinity();

/// (1, lambda_1, lambda_2, lambda_3) with lambda_k = p_k + e^{-2t}(1 - p_k).
std::array<double, 4> mixture_eigenvalues(const MixtureWeights& p, double t);

/// Closed-form time-local rates of the mixture.
RateTriple mixture_rates(const MixtureWeights& p, double t);

/// a_k with gamma_k(t) ~ e^{-2t} a_k / (p1 p2 p3) as t -> infinity.
/// Throws BoundaryCase when some p_k = 0.
std::array<double, 3> asymptotic_rate_coefficients(const MixtureWeights& p);

/// Leading large-t behaviour gamma_k(t) = constant_k + decaying_k e^{-2t} + O(e^{-4t}),
/// valid for every p including boundary and corner weights.
struct AsymptoticRates {
  RateTriple constant{};
  RateTriple decaying{};
};
AsymptoticRates asymptotic_expansion(const MixtureWeights& p);

struct RegionTest {
  bool inside = false;
  std::vector<double> margins;
};

/// Membership in the CP-divisible region via the three polynomial
/// inequalities in (p1, p2). Corners e_k are CP.
RegionTest cp_region_test(const MixtureWeights& p, double tol = 1e-9);

/// Index (0-based) of the rate that turns negative for p outside the CP
/// region: the most violated inequality.
int negative_rate_index(const MixtureWeights& p);

/// p* = (3 - sqrt 5)/2, the CP threshold along the bisector.
double bisector_threshold();

/// Both asymptotic tensor conditions for p = (p, p, 1-2p), q = (q, q, 1-2q).
/// Requires p in (p*, 1/2] and q in [0, p*]; throws DomainError otherwise.
RegionTest bisector_tensor_test(double p, double q, double tol = 1e-9);

/// Closed interval of q in [0, p*] passing bisector_tensor_test at the given
/// tolerance, or an empty result.
struct QInterval {
  bool empty = true;
  double lo = 0.0;
  double hi = 0.0;
  double width() const { return empty ? 0.0 : hi - lo; }
};
QInterval bisector_q_interval(double p, double tol = 1e-9);

/// Whether q belongs to the region of second-party weights that keep the
/// tensor product P-divisible at time t (or asymptotically for
/// t = kInfiniteTime). Requires p outside the CP region; throws
/// PreconditionError otherwise.
RegionTest tensor_region_test(const MixtureWeights& p, const MixtureWeights& q, double t,
                              double tol = 1e-9);

/// Coefficients (alpha_30, alpha_31, alpha_32) of the numerator of gamma_3
/// in powers of e^{2t}.
std::array<double, 3> numerator_alpha(const MixtureWeights& p);

/// Denominator prod_k (1 + p_k (e^{2t} - 1)) matching numerator_alpha.
double numerator_alpha_denominator(const MixtureWeights& p, double t);

/// Coefficients beta_{k,n}, n ascending, of the numerator of
/// gamma_3^p + gamma_k^q along the bisectors (k = 1, 2, 3). Four for k = 3,
/// three otherwise. Domain p in (p*, 1/2], q in [0, p*].
std::vector<double> numerator_beta(double p, double q, int k);

/// Positive denominator matching numerator_beta.
double numerator_beta_denominator(double p, double q, int k, double t);

/// Sign changes among coefficients with |c| > tol, in list order.
int descartes_sign_changes(std::span<const double> coeffs, double tol = 1e-12);

}  // namespace qdivide
