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
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "qdivide/hermitian.hpp"
#include "qdivide/rate_model.hpp"

namespace qdivide {

inline constexpr double kDivisibilityTol = 1e-9;

enum class DivisibilityLabel { kCpDivisible, kPDivisibleOnly, kNotPDivisible, kUndetermined };

std::string_view to_string(DivisibilityLabel label);
DivisibilityLabel parse_divisibility_label(std::string_view text);

/// Outcome of a grid-based divisibility check.
///
/// `margin` is the most negative normalized criterion value: each rate (or
/// rate sum) is divided by the largest absolute rate of the models involved
/// at that time, so margins are comparable across times and models. A
/// margin of exactly zero counts as satisfied; UNDETERMINED is returned
/// when 0 < |margin| < tol.
struct DivisibilityVerdict {
  DivisibilityLabel label = DivisibilityLabel::kUndetermined;
  /// First time the deciding criterion drops below -tol (infinity when only
  /// the asymptotic sample of a mixture does).
  std::optional<double> witness_time;
  std::string witness_detail;
  double margin = 0.0;
};

std::vector<double> log_spaced_grid(double lo, double hi, int points);
std::vector<double> uniform_grid(double lo, double hi, int points);
/// 400 log-spaced points on [1e-3, 20].
std::vector<double> default_grid();

/// Full classification of a single Pauli dynamics: CP_DIVISIBLE if all
/// rates are nonnegative, P_DIVISIBLE_ONLY if only pairwise sums are.
DivisibilityVerdict cp_divisible(const RateModel& model, std::span<const double> grid,
                                 double tol = kDivisibilityTol);

/// Decided on the pairwise rate sums; a P-divisible result is refined to
/// CP_DIVISIBLE when all rates are nonnegative as well.
DivisibilityVerdict p_divisible(const RateModel& model, std::span<const double> grid,
                                double tol = kDivisibilityTol);

/// P-divisibility of the product of two Pauli dynamics: both maps P-divisible
/// and all nine cross sums gamma_i^(1) + gamma_j^(2) nonnegative.
DivisibilityVerdict tensor_p_divisible(const RateModel& model1, const RateModel& model2,
                                       std::span<const double> grid,
                                       double tol = kDivisibilityTol);

/// Hermitian coefficient matrix of a qubit generator in the Pauli basis.
class KossakowskiMatrix {
 public:
  explicit KossakowskiMatrix(const Eigen::Matrix3cd& entries, double tol = kHermitianTol);

  /// diag(gamma_1, gamma_2, gamma_3) / 2.
  static KossakowskiMatrix pauli(const RateTriple& rates);
  /// Kossakowski matrix of `model` at time t (coupling included).
  static KossakowskiMatrix of(const RateModel& model, double t);

  int dim() const { return 3; }
  const Eigen::Matrix3cd& entries() const { return k_; }
  double min_eigenvalue() const;

 private:
  Eigen::Matrix3cd k_;
};

/// Conjugation V F_i^dag V^-1 = sum_j Vcal_ij F_j^dag in the basis F = sigma / sqrt(2).
struct ConjugationSpec {
  std::string name;
  Eigen::Matrix2cd v;
  Eigen::Matrix3cd vcal;
};

ConjugationSpec conjugation_matrix(const Eigen::Matrix2cd& v, std::string name = "V");

/// Identity and V^{kl} = (sigma_k + sigma_l) / sqrt(2) for kl in {12, 13, 23}.
std::vector<ConjugationSpec> standard_conjugations();

/// Minimum eigenvalue of K1 + Vcal^dag K2 Vcal. Negative values certify that
/// the product dynamics is not P-divisible at that time.
double necessary_tensor_condition(const KossakowskiMatrix& k1, const KossakowskiMatrix& k2,
                                  const ConjugationSpec& spec);

/// Sufficient conditions for P-divisibility of the product when only
/// gamma_i^(1) and gamma_j^(2) may go negative. i and j are 1-based.
bool sufficient_condition_check(const RateModel& model1, const RateModel& model2, int i, int j,
                                std::span<const double> grid, double tol = kDivisibilityTol);

using Vector4c = Eigen::Matrix<Complex, 4, 1>;

/// <phi| L[|psi><psi|] |phi> for the generator L1 (x) id + id (x) L2 built
/// from effective rate triples g1, g2; phi and psi must be orthonormal.
double positivity_functional(const RateTriple& g1, const RateTriple& g2, const Vector4c& phi,
                             const Vector4c& psi);

/// Minimum of the positivity functional over `samples` Haar-random
/// orthonormal pairs. Deterministic given seed.
double positivity_functional_sample(const RateModel& model1, const RateModel& model2, double t,
                                    int samples, std::uint64_t seed);

}  // namespace qdivide
