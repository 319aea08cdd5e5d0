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

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "qdivide/divisibility.hpp"
#include "qdivide/hermitian.hpp"
#include "qdivide/rate_model.hpp"

namespace qdivide {

/// Slopes above this count as a revival.
inline constexpr double kBfiThreshold = 1e-6;

/// Two density matrices and a bias defining mu rho - (1 - mu) sigma.
class HelstromSpec {
 public:
  /// Throws InvalidInput unless rho and sigma are density matrices of the
  /// same dimension (unit trace, eigenvalues >= -1e-10) and mu is in [0, 1].
  HelstromSpec(HermitianMatrix rho, HermitianMatrix sigma, double mu);

  /// Valid spec whose Helstrom matrix is `delta` / ||delta||_1, obtained from
  /// the Jordan decomposition of delta.
  static HelstromSpec from_helstrom_matrix(const HermitianMatrix& delta);

  const HermitianMatrix& rho() const { return rho_; }
  const HermitianMatrix& sigma() const { return sigma_; }
  double mu() const { return mu_; }
  int dim() const { return rho_.dim(); }

 private:
  HermitianMatrix rho_;
  HermitianMatrix sigma_;
  double mu_;
};

HermitianMatrix helstrom(const HelstromSpec& spec);

/// Haar-random pure state |psi><psi| of dimension 2 or 4.
HermitianMatrix haar_pure_state(int dim, std::mt19937_64& rng);
/// Random mixed state G G^dag / Tr(G G^dag) with complex Gaussian G.
HermitianMatrix random_density_matrix(int dim, std::mt19937_64& rng);

enum class TrajectoryMode { kSingle, kTensor, kAncilla };

std::string_view to_string(TrajectoryMode mode);

struct Trajectory {
  std::vector<double> times;
  std::vector<double> values;
  TrajectoryMode mode = TrajectoryMode::kSingle;
};

/// Trace norm of the evolved Helstrom matrix on `grid`. kSingle evolves a
/// qubit spec with model1, kTensor a two-qubit spec with model1 (x) model2
/// (model2 required), kAncilla a two-qubit spec with model1 (x) id.
Trajectory trajectory(const RateModel& model1, const RateModel* model2, const HelstromSpec& spec,
                      std::span<const double> grid, TrajectoryMode mode);

struct BfiInterval {
  double t_a = 0.0;
  double t_b = 0.0;
  double max_slope = 0.0;
};

/// Maximal runs of consecutive forward-difference slopes above tol.
std::vector<BfiInterval> detect_bfi(const Trajectory& traj, double tol = kBfiThreshold);

/// 2000 uniform points on [0, 10].
std::vector<double> default_witness_grid();

struct WitnessReport {
  bool found = false;
  std::optional<HelstromSpec> spec;
  double t_a = 0.0;
  double t_b = 0.0;
  double max_derivative = 0.0;
  std::uint64_t seed = 0;
  long evaluations = 0;
};

/// Searches two-qubit Helstrom matrices for a revival under model1 (x) model2.
///
/// Half the budget goes to independent restarts (even restarts: Haar pure
/// rho, sigma with uniform mu, restart 0 with mu = 1/2; odd restarts: a pure
/// state pulled back through the inverse channel from a random grid time).
/// The rest hill-climbs the best restart coordinate-wise on its 16 Pauli
/// tensor coefficients, renormalized to unit trace norm each step. One
/// evaluation is one full trajectory. Deterministic given seed.
WitnessReport witness_search(const RateModel& model1, const RateModel& model2, int budget,
                             std::uint64_t seed, std::span<const double> grid);
WitnessReport witness_search(const RateModel& model1, const RateModel& model2, int budget,
                             std::uint64_t seed);

/// Largest forward-difference slope of the witness on a grid ten times finer
/// than `grid`, restricted to the reported interval.
double refined_witness_slope(const RateModel& model1, const RateModel& model2,
                             const WitnessReport& report, std::span<const double> grid);

/// True when the refined slope exceeds half the reported one.
bool verify_witness(const RateModel& model1, const RateModel& model2, const WitnessReport& report,
                    std::span<const double> grid);

struct SbfiReport {
  /// Single-map specs checked for revivals.
  int single_specs = 0;
  /// Largest single-map slope seen across them.
  double single_max_slope = 0.0;
  bool single_no_bfi = false;
  DivisibilityVerdict classification;
  WitnessReport witness;
  bool witness_verified = false;
  bool sbfi = false;
};

/// SBFI iff no single-map revival over `single_specs` random qubit specs,
/// the model is P-divisible but not CP-divisible, and the tensor witness
/// search succeeds. Throws NonInvertible when a decay factor vanishes on the
/// witness grid.
SbfiReport sbfi_report(const RateModel& model, int budget, std::uint64_t seed,
                       int single_specs = 100);

}  // namespace qdivide
