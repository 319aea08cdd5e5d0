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

#include "qdivide/pauli_channel.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <type_traits>

#include "qdivide/error.hpp"
#include "qdivide/mixtures.hpp"
#include "quadrature.hpp"

namespace qdivide {

namespace {

// Indices (beta, delta) complementary to alpha, all 0-based.
constexpr std::array<std::array<int, 2>, 3> kComplement{{{1, 2}, {0, 2}, {0, 1}}};

void check_time(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw InvalidInput("time must be finite and nonnegative, got " + std::to_string(t));
  }
}

// (1 - cos(omega t)) / omega, continuous through omega = 0.
double sinusoid_integral(double omega, double t) {
  const double x = omega * t;
  if (std::abs(omega) < 1e-6 || std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return t * x * (0.5 - x2 / 24.0 + x2 * x2 / 720.0);
  }
  return (1.0 - std::cos(x)) / omega;
}

std::size_t tabulated_interval(const TabulatedRates& tab, double t) {
  if (t < tab.times.front() || t > tab.times.back()) {
    throw OutOfRange("time " + std::to_string(t) + " outside tabulated grid [" +
                     std::to_string(tab.times.front()) + ", " +
                     std::to_string(tab.times.back()) + "]");
  }
  auto it = std::upper_bound(tab.times.begin(), tab.times.end(), t);
  std::size_t i = static_cast<std::size_t>(it - tab.times.begin());
  if (i == 0) i = 1;
  if (i >= tab.times.size()) i = tab.times.size() - 1;
  return i - 1;
}

// int_0^t gamma_k for each k.
RateTriple integrated_rates(const RateModel& model, double t) {
  return std::visit(
      [t](const auto& k) -> RateTriple {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, ConstantRates>) {
          return {k.g[0] * t, k.g[1] * t, k.g[2] * t};
        } else if constexpr (std::is_same_v<T, SinusoidRates>) {
          return {t, t, sinusoid_integral(k.omega, t)};
        } else if constexpr (std::is_same_v<T, TabulatedRates>) {
          const std::size_t i = tabulated_interval(k, t);
          const std::size_t n = k.times.size();
          const bool linear = n < 3;
          const std::size_t b = detail::quadratic_base(n, i);
          RateTriple out = k.cumulative[i];
          for (int c = 0; c < 3; ++c) {
            const double f2 = linear ? 0.0 : k.rates[b + 2][c];
            out[c] += detail::stencil_integral(&k.times[b], k.rates[b][c], k.rates[b + 1][c], f2,
                                               k.times[i], t, linear);
          }
          return out;
        } else {
          // Mixtures are handled through their closed-form eigenvalues.
          return {0.0, 0.0, 0.0};
        }
      },
      model.kind());
}

double mixture_log_eigenvalue(double pk, double t) {
  if (pk == 0.0) return -2.0 * t;
  const double v = pk + std::exp(-2.0 * t) * (1.0 - pk);
  if (v > 0.5) return std::log1p((1.0 - pk) * std::expm1(-2.0 * t));
  return std::log(v);
}

}  // namespace

RateTriple rates_at(const RateModel& model, double t) {
  check_time(t);
  return std::visit(
      [t](const auto& k) -> RateTriple {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, ConstantRates>) {
          return k.g;
        } else if constexpr (std::is_same_v<T, SinusoidRates>) {
          return {1.0, 1.0, std::sin(k.omega * t)};
        } else if constexpr (std::is_same_v<T, MixtureRates>) {
          return mixture_rates(k.p, t);
        } else {
          const std::size_t i = tabulated_interval(k, t);
          const double w = (t - k.times[i]) / (k.times[i + 1] - k.times[i]);
          RateTriple out;
          for (int c = 0; c < 3; ++c) out[c] = (1.0 - w) * k.rates[i][c] + w * k.rates[i + 1][c];
          return out;
        }
      },
      model.kind());
}

RateTriple effective_rates_at(const RateModel& model, double t) {
  RateTriple g = rates_at(model, t);
  for (double& v : g) v *= model.coupling();
  return g;
}

std::array<double, 3> log_decay(const RateModel& model, double t) {
  check_time(t);
  if (const auto* m = std::get_if<MixtureRates>(&model.kind())) {
    return {mixture_log_eigenvalue(m->p[0], t), mixture_log_eigenvalue(m->p[1], t),
            mixture_log_eigenvalue(m->p[2], t)};
  }
  const RateTriple integral = integrated_rates(model, t);
  std::array<double, 3> out;
  for (int a = 0; a < 3; ++a) {
    const auto [b, d] = kComplement[a];
    out[a] = -model.coupling() * (integral[b] + integral[d]);
  }
  return out;
}

DecayFactors decay_factors(const RateModel& model, double t) {
  if (const auto* m = std::get_if<MixtureRates>(&model.kind())) {
    check_time(t);
    return {t, mixture_eigenvalues(m->p, t)};
  }
  const auto logs = log_decay(model, t);
  return {t, {1.0, std::exp(logs[0]), std::exp(logs[1]), std::exp(logs[2])}};
}

DecayFactors intertwiner_factors(const RateModel& model, double s, double t) {
  check_time(s);
  check_time(t);
  if (s > t) {
    throw InvalidInput("intertwiner requires s <= t, got s=" + std::to_string(s) +
                       " t=" + std::to_string(t));
  }
  if (s == t) return DecayFactors::identity(t);
  const auto ls = log_decay(model, s);
  const auto lt = log_decay(model, t);
  return {t, {1.0, std::exp(lt[0] - ls[0]), std::exp(lt[1] - ls[1]), std::exp(lt[2] - ls[2])}};
}

HermitianMatrix apply_channel(const DecayFactors& f, const HermitianMatrix& h) {
  if (h.dim() != 2) throw InvalidInput("apply_channel expects a 2x2 operator");
  PauliCoefficients c = pauli_decompose(h);
  for (int a = 0; a < 4; ++a) c[a] *= f.lambda[a];
  return pauli_compose(c);
}

HermitianMatrix apply_tensor_channel(const DecayFactors& f1, const DecayFactors& f2,
                                     const HermitianMatrix& h) {
  if (h.dim() != 4) throw InvalidInput("apply_tensor_channel expects a 4x4 operator");
  PauliCoefficients c = pauli_decompose(h);
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) c(mu, nu) *= f1.lambda[mu] * f2.lambda[nu];
  return pauli_compose(c);
}

HermitianMatrix maximally_entangled_projector() {
  Eigen::Matrix<Complex, Eigen::Dynamic, 1, 0, 4, 1> v(4);
  v << 1.0, 0.0, 0.0, 1.0;
  return HermitianMatrix::projector(v);
}

HermitianMatrix choi_matrix(const DecayFactors& f) {
  return apply_tensor_channel(f, DecayFactors::identity(f.t), maximally_entangled_projector());
}

CptpCheck is_cptp(const DecayFactors& f, double tol) {
  const double min_eig = eigenvalues(choi_matrix(f)).front();
  return {min_eig >= -tol, min_eig};
}

RateTriple numeric_generator_rates(const RateModel& model, double t, double h) {
  if (!(h > 0.0)) throw InvalidInput("finite-difference step must be positive");
  if (t < h) throw InvalidInput("numeric_generator_rates requires t >= h");
  for (double tau : {t - h, t, t + h}) {
    const DecayFactors f = decay_factors(model, tau);
    for (int a = 1; a < 4; ++a) {
      if (!(std::abs(f.lambda[a]) > 1e-300)) {
        throw NonInvertible("decay factor " + std::to_string(a) + " vanishes near t=" +
                            std::to_string(tau));
      }
    }
  }
  const auto lo = log_decay(model, t - h);
  const auto hi = log_decay(model, t + h);
  // s_a = gamma_beta + gamma_delta.
  std::array<double, 3> s;
  for (int a = 0; a < 3; ++a) s[a] = -(hi[a] - lo[a]) / (2.0 * h) / model.coupling();
  return {0.5 * (s[1] + s[2] - s[0]), 0.5 * (s[0] + s[2] - s[1]), 0.5 * (s[0] + s[1] - s[2])};
}

CpScan scan_complete_positivity(const RateModel& model, std::span<const double> grid,
                                double tol) {
  CpScan scan;
  scan.min_eigenvalue = std::numeric_limits<double>::infinity();
  for (double t : grid) {
    const CptpCheck c = is_cptp(decay_factors(model, t), tol);
    scan.min_eigenvalue = std::min(scan.min_eigenvalue, c.min_eigenvalue);
    if (!c.completely_positive && scan.completely_positive_everywhere) {
      scan.completely_positive_everywhere = false;
      scan.first_violation_time = t;
    }
  }
  return scan;
}

double minimal_cp_coupling(const RateModel& model, std::span<const double> grid, double lo,
                           double hi, double resolution) {
  if (!(lo > 0.0) || !(hi > lo)) throw InvalidInput("coupling bracket must satisfy 0 < lo < hi");
  auto cp = [&](double c) {
    return scan_complete_positivity(model.with_coupling(c), grid).completely_positive_everywhere;
  };
  if (!cp(hi)) throw DomainError("model is not CP at the upper end of the coupling bracket");
  if (cp(lo)) return lo;
  while (hi - lo > resolution) {
    const double mid = 0.5 * (lo + hi);
    (cp(mid) ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace qdivide
