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

#include "qdivide/bfi.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qdivide/error.hpp"
#include "qdivide/parallel.hpp"
#include "qdivide/pauli_channel.hpp"
#include "qdivide/random.hpp"

namespace qdivide {

namespace {

constexpr double kStateTol = 1e-10;

void check_density(const HermitianMatrix& m, const char* name) {
  if (std::abs(m.trace() - 1.0) > kStateTol) {
    throw InvalidInput(std::string(name) + " must have unit trace");
  }
  if (eigenvalues(m).front() < -kStateTol) {
    throw InvalidInput(std::string(name) + " must be positive semidefinite");
  }
}

using Weights = std::array<double, 16>;

// Per-time multipliers of the Pauli (tensor) coefficients.
std::vector<Weights> coefficient_weights(const RateModel& model1, const RateModel* model2,
                                         std::span<const double> grid, TrajectoryMode mode) {
  std::vector<Weights> w(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const DecayFactors f1 = decay_factors(model1, grid[i]);
    const DecayFactors f2 =
        mode == TrajectoryMode::kTensor ? decay_factors(*model2, grid[i]) : DecayFactors::identity();
    w[i].fill(0.0);
    if (mode == TrajectoryMode::kSingle) {
      for (int a = 0; a < 4; ++a) w[i][a] = f1.lambda[a];
    } else {
      for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) w[i][4 * mu + nu] = f1.lambda[mu] * f2.lambda[nu];
    }
  }
  return w;
}

double evolved_norm(const PauliCoefficients& c, const Weights& w) {
  PauliCoefficients e = c;
  for (int k = 0; k < c.size(); ++k) e[k] *= w[k];
  return trace_norm_of_coefficients(e);
}

struct SlopeScan {
  double max_slope = -std::numeric_limits<double>::infinity();
  std::size_t index = 0;
};

SlopeScan max_forward_slope(const PauliCoefficients& c, const std::vector<Weights>& w,
                            std::span<const double> grid) {
  SlopeScan s;
  double prev = evolved_norm(c, w[0]);
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double next = evolved_norm(c, w[i + 1]);
    const double slope = (next - prev) / (grid[i + 1] - grid[i]);
    if (slope > s.max_slope) s = {slope, i};
    prev = next;
  }
  return s;
}

// Rescales to unit trace norm; false if the matrix vanished.
bool normalize(PauliCoefficients& c) {
  const double n = trace_norm_of_coefficients(c);
  if (!(n > 1e-300)) return false;
  for (int k = 0; k < c.size(); ++k) c[k] /= n;
  return true;
}

void check_witness_grid(std::span<const double> grid) {
  if (grid.size() < 3) throw InvalidInput("witness grid needs at least 3 points");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw InvalidInput("witness grid must be strictly increasing");
  }
  if (!(grid.front() >= 0.0)) throw InvalidInput("witness grid must start at t >= 0");
}

}  // namespace

HelstromSpec::HelstromSpec(HermitianMatrix rho, HermitianMatrix sigma, double mu)
    : rho_(std::move(rho)), sigma_(std::move(sigma)), mu_(mu) {
  if (rho_.dim() != sigma_.dim()) throw InvalidInput("rho and sigma dimensions differ");
  if (!(mu >= 0.0 && mu <= 1.0)) throw InvalidInput("mu must lie in [0, 1]");
  check_density(rho_, "rho");
  check_density(sigma_, "sigma");
}

HelstromSpec HelstromSpec::from_helstrom_matrix(const HermitianMatrix& delta) {
  const int n = delta.dim();
  const EigenDecomposition e = eigen_decomposition(delta);
  SmallMatrix pos = SmallMatrix::Zero(n, n);
  SmallMatrix neg = SmallMatrix::Zero(n, n);
  double a = 0.0, b = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto v = e.vectors.col(i);
    const double x = e.values[i];
    if (x > 0.0) {
      pos += x * v * v.adjoint();
      a += x;
    } else if (x < 0.0) {
      neg -= x * v * v.adjoint();
      b -= x;
    }
  }
  if (!(a + b > 0.0)) throw InvalidInput("Helstrom matrix must be nonzero");
  const HermitianMatrix mixed = HermitianMatrix::identity(n) * (1.0 / n);
  const HermitianMatrix rho = a > 0.0 ? HermitianMatrix(pos / a) : mixed;
  const HermitianMatrix sigma = b > 0.0 ? HermitianMatrix(neg / b) : mixed;
  return HelstromSpec(rho, sigma, a / (a + b));
}

HermitianMatrix helstrom(const HelstromSpec& spec) {
  return spec.rho() * spec.mu() - spec.sigma() * (1.0 - spec.mu());
}

HermitianMatrix haar_pure_state(int dim, std::mt19937_64& rng) {
  if (dim != 2 && dim != 4) throw InvalidInput("state dimension must be 2 or 4");
  std::normal_distribution<double> normal;
  Eigen::Matrix<Complex, Eigen::Dynamic, 1, 0, 4, 1> v(dim);
  for (int i = 0; i < dim; ++i) v(i) = Complex(normal(rng), normal(rng));
  return HermitianMatrix::projector(v);
}

HermitianMatrix random_density_matrix(int dim, std::mt19937_64& rng) {
  if (dim != 2 && dim != 4) throw InvalidInput("state dimension must be 2 or 4");
  std::normal_distribution<double> normal;
  SmallMatrix g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = Complex(normal(rng), normal(rng));
  SmallMatrix m = g * g.adjoint();
  m /= m.trace().real();
  return HermitianMatrix(m);
}

std::string_view to_string(TrajectoryMode mode) {
  switch (mode) {
    case TrajectoryMode::kSingle:
      return "single";
    case TrajectoryMode::kTensor:
      return "tensor";
    case TrajectoryMode::kAncilla:
      return "ancilla";
  }
  return "single";
}

Trajectory trajectory(const RateModel& model1, const RateModel* model2, const HelstromSpec& spec,
                      std::span<const double> grid, TrajectoryMode mode) {
  const int want = mode == TrajectoryMode::kSingle ? 2 : 4;
  if (spec.dim() != want) {
    throw InvalidInput(std::string(to_string(mode)) + " trajectory needs a dimension-" +
                       std::to_string(want) + " Helstrom spec");
  }
  if (mode == TrajectoryMode::kTensor && model2 == nullptr) {
    throw InvalidInput("tensor trajectory needs a second model");
  }
  if (grid.empty()) throw InvalidInput("trajectory grid is empty");
  const PauliCoefficients c = pauli_decompose(helstrom(spec));
  const auto w = coefficient_weights(model1, model2, grid, mode);
  Trajectory traj;
  traj.mode = mode;
  traj.times.assign(grid.begin(), grid.end());
  traj.values.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) traj.values[i] = evolved_norm(c, w[i]);
  return traj;
}

std::vector<BfiInterval> detect_bfi(const Trajectory& traj, double tol) {
  const auto& t = traj.times;
  const auto& v = traj.values;
  if (t.size() < 3 || v.size() != t.size()) {
    throw InvalidInput("BFI detection needs at least 3 matching samples");
  }
  std::vector<BfiInterval> out;
  bool open = false;
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    const double slope = (v[i + 1] - v[i]) / (t[i + 1] - t[i]);
    if (slope > tol) {
      if (!open) {
        out.push_back({t[i], t[i + 1], slope});
        open = true;
      } else {
        out.back().t_b = t[i + 1];
        out.back().max_slope = std::max(out.back().max_slope, slope);
      }
    } else {
      open = false;
    }
  }
  return out;
}

std::vector<double> default_witness_grid() {
  std::vector<double> g(2000);
  for (int i = 0; i < 2000; ++i) g[i] = 10.0 * i / 1999.0;
  return g;
}

WitnessReport witness_search(const RateModel& model1, const RateModel& model2, int budget,
                             std::uint64_t seed) {
  const auto grid = default_witness_grid();
  return witness_search(model1, model2, budget, seed, grid);
}

WitnessReport witness_search(const RateModel& model1, const RateModel& model2, int budget,
                             std::uint64_t seed, std::span<const double> grid) {
  if (budget < 1) throw InvalidInput("witness budget must be at least 1");
  check_witness_grid(grid);
  const auto w = coefficient_weights(model1, &model2, grid, TrajectoryMode::kTensor);

  const int restarts = std::max(1, budget / 2);
  // Pull-back times come from the early part of the grid, where the
  // inverse channel is well conditioned.
  const std::size_t pull_span = std::max<std::size_t>(1, (grid.size() - 1) * 3 / 10);

  struct Candidate {
    PauliCoefficients c{2};
    double slope = -std::numeric_limits<double>::infinity();
  };
  std::vector<Candidate> cands(restarts);
  parallel_for(cands.size(), [&](std::size_t r) {
    auto rng = rng_stream(seed, r);
    PauliCoefficients c(2);
    if (r % 2 == 0) {
      std::uniform_real_distribution<double> unit(0.0, 1.0);
      const HermitianMatrix rho = haar_pure_state(4, rng);
      const HermitianMatrix sigma = haar_pure_state(4, rng);
      const double mu = r == 0 ? 0.5 : unit(rng);
      c = pauli_decompose(rho * mu - sigma * (1.0 - mu));
    } else {
      std::uniform_int_distribution<std::size_t> pick(0, pull_span - 1);
      const Weights& ws = w[pick(rng)];
      c = pauli_decompose(haar_pure_state(4, rng));
      for (int k = 0; k < 16; ++k) c[k] /= ws[k];
    }
    if (!normalize(c)) return;
    cands[r] = {c, max_forward_slope(c, w, grid).max_slope};
  });

  std::size_t best = 0;
  for (std::size_t r = 1; r < cands.size(); ++r) {
    if (cands[r].slope > cands[best].slope) best = r;
  }
  PauliCoefficients cur = cands[best].c;
  double cur_slope = cands[best].slope;
  long evaluations = restarts;

  // Coordinate-wise refinement with a shrinking step.
  double step = 0.05;
  while (evaluations < budget && step > 1e-6) {
    bool improved = false;
    for (int k = 0; k < 16 && evaluations < budget; ++k) {
      for (double dir : {1.0, -1.0}) {
        if (evaluations >= budget) break;
        PauliCoefficients trial = cur;
        trial[k] += dir * step;
        ++evaluations;
        if (!normalize(trial)) continue;
        const double s = max_forward_slope(trial, w, grid).max_slope;
        if (s > cur_slope) {
          cur = trial;
          cur_slope = s;
          improved = true;
          break;
        }
      }
    }
    if (!improved) step *= 0.5;
  }

  WitnessReport report;
  report.seed = seed;
  report.evaluations = evaluations;
  const HelstromSpec spec = HelstromSpec::from_helstrom_matrix(pauli_compose(cur));
  const Trajectory traj = trajectory(model1, &model2, spec, grid, TrajectoryMode::kTensor);
  report.spec = spec;
  const PauliCoefficients c = pauli_decompose(helstrom(spec));
  const SlopeScan scan = max_forward_slope(c, w, grid);
  report.max_derivative = scan.max_slope;
  report.t_a = grid[scan.index];
  report.t_b = grid[scan.index + 1];
  for (const BfiInterval& iv : detect_bfi(traj, kBfiThreshold)) {
    if (iv.t_a <= report.t_a && report.t_b <= iv.t_b) {
      report.t_a = iv.t_a;
      report.t_b = iv.t_b;
    }
  }
  report.found = report.max_derivative > kBfiThreshold;
  return report;
}

double refined_witness_slope(const RateModel& model1, const RateModel& model2,
                             const WitnessReport& report, std::span<const double> grid) {
  if (!report.spec) throw InvalidInput("witness report carries no Helstrom spec");
  check_witness_grid(grid);
  const double spacing = (grid.back() - grid.front()) / static_cast<double>(grid.size() - 1);
  const double h = spacing / 10.0;
  const int steps = std::max(1, static_cast<int>(std::lround((report.t_b - report.t_a) / h)));
  std::vector<double> fine(steps + 1);
  for (int i = 0; i <= steps; ++i) fine[i] = report.t_a + (report.t_b - report.t_a) * i / steps;
  const Trajectory traj = trajectory(model1, &model2, *report.spec, fine, TrajectoryMode::kTensor);
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < fine.size(); ++i) {
    best = std::max(best, (traj.values[i + 1] - traj.values[i]) / (fine[i + 1] - fine[i]));
  }
  return best;
}

bool verify_witness(const RateModel& model1, const RateModel& model2, const WitnessReport& report,
                    std::span<const double> grid) {
  if (!report.found) return false;
  return refined_witness_slope(model1, model2, report, grid) > 0.5 * report.max_derivative;
}

SbfiReport sbfi_report(const RateModel& model, int budget, std::uint64_t seed, int single_specs) {
  if (single_specs < 1) throw InvalidInput("need at least one single-map spec");
  const auto grid = default_witness_grid();
  for (double t : grid) {
    const DecayFactors f = decay_factors(model, t);
    for (int a = 1; a < 4; ++a) {
      if (!(std::abs(f.lambda[a]) > 1e-300)) {
        throw NonInvertible("decay factor vanishes at t=" + std::to_string(t));
      }
    }
  }

  SbfiReport rep;
  rep.single_specs = single_specs;
  std::vector<double> slopes(single_specs);
  // Stream indices past the witness restarts keep the two searches independent.
  const std::uint64_t base = 1ULL << 40;
  parallel_for(slopes.size(), [&](std::size_t i) {
    auto rng = rng_stream(seed, base + i);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const HermitianMatrix rho = random_density_matrix(2, rng);
    const HermitianMatrix sigma = random_density_matrix(2, rng);
    const HelstromSpec spec(rho, sigma, unit(rng));
    const Trajectory traj = trajectory(model, nullptr, spec, grid, TrajectoryMode::kSingle);
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
      m = std::max(m, (traj.values[k + 1] - traj.values[k]) / (grid[k + 1] - grid[k]));
    }
    slopes[i] = m;
  });
  rep.single_max_slope = *std::max_element(slopes.begin(), slopes.end());
  rep.single_no_bfi = rep.single_max_slope <= kBfiThreshold;

  rep.classification = cp_divisible(model, default_grid());
  rep.witness = witness_search(model, model, budget, seed, grid);
  rep.witness_verified = rep.witness.found && verify_witness(model, model, rep.witness, grid);
  rep.sbfi = rep.single_no_bfi &&
             rep.classification.label == DivisibilityLabel::kPDivisibleOnly &&
             rep.witness.found;
  return rep;
}

}  // namespace qdivide
