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
#include <span>

#include "qdivide/hermitian.hpp"
#include "qdivide/rate_model.hpp"

namespace qdivide {

/// Eigenvalues of a Pauli channel on the Pauli basis: Lambda[sigma_a] =
/// lambda[a] sigma_a, with lambda[0] = 1 (trace preservation).
struct DecayFactors {
  double t = 0.0;
  std::array<double, 4> lambda{1.0, 1.0, 1.0, 1.0};

  static DecayFactors identity(double t = 0.0) { return {t, {1.0, 1.0, 1.0, 1.0}}; }
};

/// Raw rates (gamma_1, gamma_2, gamma_3) at time t (coupling not applied).
RateTriple rates_at(const RateModel& model, double t);

/// lambda * gamma_k(t): the rates of the generator actually applied.
RateTriple effective_rates_at(const RateModel& model, double t);

/// ln lambda_a(t), a = 1..3 (stored 0-based). Closed forms for constants,
/// sinusoid and mixture kinds; tabulated rates use composite Simpson.
std::array<double, 3> log_decay(const RateModel& model, double t);

DecayFactors decay_factors(const RateModel& model, double t);

/// Factors of the intertwiner Lambda_{t,s}, 0 <= s <= t.
DecayFactors intertwiner_factors(const RateModel& model, double s, double t);

/// c_a -> lambda_a c_a on the Pauli coefficients of a one-qubit operator.
HermitianMatrix apply_channel(const DecayFactors& f, const HermitianMatrix& h);

/// c_{mu nu} -> lambda1_mu lambda2_nu c_{mu nu} on a two-qubit operator.
HermitianMatrix apply_tensor_channel(const DecayFactors& f1, const DecayFactors& f2,
                                     const HermitianMatrix& h);

/// Projector onto (|00> + |11>)/sqrt(2).
HermitianMatrix maximally_entangled_projector();

/// Choi matrix (Lambda (x) id)[P2+] = (1 + l1 s1s1 - l2 s2s2 + l3 s3s3)/4.
HermitianMatrix choi_matrix(const DecayFactors& f);

struct CptpCheck {
  bool completely_positive = false;
  double min_eigenvalue = 0.0;
};

/// Complete positivity via the smallest Choi eigenvalue (>= -tol).
CptpCheck is_cptp(const DecayFactors& f, double tol = 1e-12);

/// Reconstructs the rates from central differences of ln lambda_a:
/// gamma_beta + gamma_delta = -(d/dt) ln lambda_a / coupling.
/// Throws NonInvertible if a decay factor vanishes on [t - h, t + h].
RateTriple numeric_generator_rates(const RateModel& model, double t, double h = 1e-5);

/// First grid time where the channel fails to be CP, if any.
struct CpScan {
  bool completely_positive_everywhere = true;
  double first_violation_time = 0.0;
  double min_eigenvalue = 0.0;
};
CpScan scan_complete_positivity(const RateModel& model, std::span<const double> grid,
                                double tol = 1e-12);

/// Smallest coupling in [lo, hi] (to within `resolution`) for which the
/// model is CP at every grid time, found by bisection. Assumes CP at `hi`;
/// throws DomainError otherwise.
double minimal_cp_coupling(const RateModel& model, std::span<const double> grid, double lo,
                           double hi, double resolution = 1e-6);

}  // namespace qdivide
