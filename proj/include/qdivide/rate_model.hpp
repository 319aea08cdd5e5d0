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
#include <string>
#include <variant>
#include <vector>

namespace qdivide {

/// Pauli rates (gamma_1, gamma_2, gamma_3), stored 0-based.
using RateTriple = std::array<double, 3>;

/// Probability triple p = (p1, p2, p3) labeling a mixture of the three pure
/// dephasing semigroups.
class MixtureWeights {
 public:
  /// Throws InvalidInput unless p_k >= 0 and sum p_k = 1 within 1e-12.
  MixtureWeights(double p1, double p2, double p3);

  /// Bisector point (p, p, 1 - 2p).
  static MixtureWeights bisector(double p);

  /// 0-based access: operator[](0) is p1.
  double operator[](int k) const { return p_[k]; }
  const std::array<double, 3>& values() const { return p_; }

  /// p1 p2 p3 > 0.
  bool interior() const;
  /// p equals one of the simplex vertices e_k.
  bool is_corner() const;

  std::string to_string() const;

 private:
  std::array<double, 3> p_;
};

/// gamma_k = g_k for all t.
struct ConstantRates {
  RateTriple g;
};

/// gamma_1 = gamma_2 = 1, gamma_3 = sin(omega t).
struct SinusoidRates {
  double omega;
};

/// Mixture of pure dephasing semigroups; coupling fixed to 1.
struct MixtureRates {
  MixtureWeights p;
};

/// Rates sampled on a strictly increasing grid starting at t = 0,
/// linearly interpolated between nodes.
struct TabulatedRates {
  std::vector<double> times;
  std::vector<RateTriple> rates;
  /// int_0^{times[i]} gamma_k, composite Simpson over consecutive node pairs.
  std::vector<RateTriple> cumulative;
};

/// Time-dependent Pauli rates with an overall coupling lambda > 0. The
/// generator is (lambda/2) sum_k gamma_k(t) (sigma_k rho sigma_k - rho), so
/// sigma_alpha decays with exp(-lambda int (gamma_beta + gamma_delta)).
class RateModel {
 public:
  using Kind = std::variant<ConstantRates, SinusoidRates, MixtureRates, TabulatedRates>;

  static RateModel constants(double g1, double g2, double g3, double coupling = 1.0);
  static RateModel sinusoid(double omega, double coupling = 1.0);
  static RateModel mixture(const MixtureWeights& p);
  static RateModel tabulated(std::vector<double> times, std::vector<RateTriple> rates,
                             double coupling = 1.0);

  /// Same rates with a different coupling (mixtures keep coupling 1).
  RateModel with_coupling(double coupling) const;

  const Kind& kind() const { return kind_; }
  double coupling() const { return coupling_; }
  bool is_mixture() const { return std::holds_alternative<MixtureRates>(kind_); }
  /// Weights of a mixture model; throws InvalidInput for other kinds.
  const MixtureWeights& weights() const;

  std::string describe() const;

 private:
  RateModel(Kind kind, double coupling);

  Kind kind_;
  double coupling_;
};

}  // namespace qdivide
