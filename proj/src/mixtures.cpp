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

#include "qdivide/mixtures.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qdivide/error.hpp"

namespace qdivide {

namespace {

void check_mixture_time(double t) {
  if (!(t >= 0.0)) throw InvalidInput("time must be nonnegative, got " + std::to_string(t));
}

// mu_k = -(1 - p_k) / (1 + p_k (e^{2t} - 1)).
double mu(double pk, double t) {
  if (pk == 0.0) return -1.0;
  if (pk == 1.0) return 0.0;
  if (std::isinf(t)) return -0.0;
  return -(1.0 - pk) / (1.0 + pk * std::expm1(2.0 * t));
}

RateTriple combine(const std::array<double, 3>& m) {
  return {m[0] - m[1] - m[2], -m[0] + m[1] - m[2], -m[0] - m[1] + m[2]};
}

void check_bisector_domain(double p, double q) {
  const double ps = bisector_threshold();
  if (!(p > ps && p <= 0.5)) {
    throw DomainError("p must lie in (p*, 1/2], got " + std::to_string(p));
  }
  if (!(q >= 0.0 && q <= ps)) {
    throw DomainError("q must lie in [0, p*], got " + std::to_string(q));
  }
}

// Leading behaviour of a + b e^{-2t} at t = infinity.
double leading(double a, double b) { return a != 0.0 ? a : b; }

}  // namespace

std::array<double, 4> mixture_eigenvalues(const MixtureWeights& p, double t) {
  check_mixture_time(t);
  const double e = std::exp(-2.0 * t);
  return {1.0, p[0] + e * (1.0 - p[0]), p[1] + e * (1.0 - p[1]), p[2] + e * (1.0 - p[2])};
}

RateTriple mixture_rates(const MixtureWeights& p, double t) {
  check_mixture_time(t);
  return combine({mu(p[0], t), mu(p[1], t), mu(p[2], t)});
}

std::array<double, 3> asymptotic_rate_coefficients(const MixtureWeights& p) {
  if (!p.interior()) {
    throw BoundaryCase("asymptotic coefficients need p1 p2 p3 > 0; " + p.to_string() +
                       " is on the simplex boundary, classify it with the eternal rule");
  }
  const double p1 = p[0], p2 = p[1], p3 = p[2];
  const double s23 = p2 * p3 * (p2 + p3);
  const double s13 = p1 * p3 * (p1 + p3);
  const double s12 = p1 * p2 * (p1 + p2);
  return {-s23 + s13 + s12, s23 - s13 + s12, s23 + s13 - s12};
}

AsymptoticRates asymptotic_expansion(const MixtureWeights& p) {
  std::array<double, 3> a{}, b{};
  for (int k = 0; k < 3; ++k) {
    if (p[k] == 0.0) {
      a[k] = -1.0;
    } else if (p[k] < 1.0) {
      b[k] = -(1.0 - p[k]) / p[k];
    }
  }
  return {combine(a), combine(b)};
}

RegionTest cp_region_test(const MixtureWeights& p, double tol) {
  const double p1 = p[0], p2 = p[1];
  const double s = p1 * p2 * (p1 + p2);
  const double reg1 = s + p2 * p2 - p1 * p1 + p1 - p2;
  const double reg2 = s + p1 * p1 - p2 * p2 + p2 - p1;
  const double reg3 = (1.0 + p1 * p2) * (p1 + p2) - p1 * p1 - p2 * p2 - 4.0 * p1 * p2;
  RegionTest r;
  r.margins = {reg1, reg2, reg3};
  r.inside = reg1 >= -tol && reg2 >= -tol && reg3 >= -tol;
  return r;
}

int negative_rate_index(const MixtureWeights& p) {
  if (cp_region_test(p).inside) return 0;
  const AsymptoticRates e = asymptotic_expansion(p);
  int best = 0;
  for (int k = 1; k < 3; ++k) {
    if (e.constant[k] < e.constant[best] ||
        (e.constant[k] == e.constant[best] && e.decaying[k] < e.decaying[best])) {
      best = k;
    }
  }
  return best + 1;
}

double bisector_threshold() { return 0.5 * (3.0 - std::sqrt(5.0)); }

RegionTest bisector_tensor_test(double p, double q, double tol) {
  check_bisector_domain(p, q);
  const double a = q * (1.0 - 2.0 * q) + p * (1.0 - 6.0 * q + 7.0 * q * q) -
                   p * p * (2.0 - 7.0 * q + 4.0 * q * q);
  const double b = 1.0 - 3.0 * p + p * p + q * (-2.0 + 7.0 * p - 4.0 * p * p);
  RegionTest r;
  r.margins = {a, b};
  r.inside = a >= -tol && b >= -tol;
  return r;
}

QInterval bisector_q_interval(double p, double tol) {
  const double ps = bisector_threshold();
  check_bisector_domain(p, 0.0);
  // Both margins as polynomials in q, shifted by tol: a2 q^2 + a1 q + a0 >= 0, b1 q + b0 >= 0.
  const double a2 = -2.0 + 7.0 * p - 4.0 * p * p;
  const double a1 = 1.0 - 6.0 * p + 7.0 * p * p;
  const double a0 = p - 2.0 * p * p + tol;
  const double b1 = -2.0 + 7.0 * p - 4.0 * p * p;
  const double b0 = 1.0 - 3.0 * p + p * p + tol;

  std::vector<double> cuts{0.0, ps};
  if (b1 != 0.0) cuts.push_back(-b0 / b1);
  if (a2 != 0.0) {
    const double disc = a1 * a1 - 4.0 * a2 * a0;
    if (disc >= 0.0) {
      const double r = std::sqrt(disc);
      // Numerically stable pair of roots.
      const double qq = -0.5 * (a1 + std::copysign(r, a1));
      if (qq != 0.0) {
        cuts.push_back(qq / a2);
        cuts.push_back(a0 / qq);
      }
    }
  } else if (a1 != 0.0) {
    cuts.push_back(-a0 / a1);
  }
  std::erase_if(cuts, [&](double c) { return !(c >= 0.0 && c <= ps); });
  std::sort(cuts.begin(), cuts.end());

  auto feasible = [&](double q) {
    return a2 * q * q + a1 * q + a0 >= 0.0 && b1 * q + b0 >= 0.0;
  };
  QInterval out;
  auto include = [&](double lo, double hi) {
    if (out.empty) {
      out = {false, lo, hi};
    } else {
      out.lo = std::min(out.lo, lo);
      out.hi = std::max(out.hi, hi);
    }
  };
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    if (feasible(cuts[i])) include(cuts[i], cuts[i]);
    if (i + 1 < cuts.size() && cuts[i + 1] > cuts[i] &&
        feasible(0.5 * (cuts[i] + cuts[i + 1]))) {
      include(cuts[i], cuts[i + 1]);
    }
  }
  return out;
}

RegionTest tensor_region_test(const MixtureWeights& p, const MixtureWeights& q, double t,
                              double tol) {
  const int j = negative_rate_index(p);
  if (j == 0) {
    throw PreconditionError("tensor region is defined only for p outside CP, got " +
                            p.to_string());
  }
  RegionTest r;
  if (std::isinf(t)) {
    const AsymptoticRates ep = asymptotic_expansion(p);
    const AsymptoticRates eq = asymptotic_expansion(q);
    for (int k = 0; k < 3; ++k) {
      r.margins.push_back(leading(ep.constant[j - 1] + eq.constant[k],
                                  ep.decaying[j - 1] + eq.decaying[k]));
    }
  } else {
    const RateTriple gp = mixture_rates(p, t);
    const RateTriple gq = mixture_rates(q, t);
    for (int k = 0; k < 3; ++k) r.margins.push_back(gp[j - 1] + gq[k]);
  }
  r.inside = std::all_of(r.margins.begin(), r.margins.end(), [&](double m) { return m >= -tol; });
  return r;
}

std::array<double, 3> numerator_alpha(const MixtureWeights& p) {
  const double p1 = p[0], p2 = p[1], p3 = p[2];
  const double a0 = (1.0 - p1) * (1.0 - p2) * (1.0 - p3);
  const double a1 = 2.0 * p3 * (1.0 - p2) * (1.0 - p1);
  const double a2 = -p1 * p1 * p2 - p1 * p2 * p2 + p1 * p1 * p3 + p2 * p2 * p3 + p1 * p3 * p3 +
                    p2 * p3 * p3;
  return {a0, a1, a2};
}

double numerator_alpha_denominator(const MixtureWeights& p, double t) {
  check_mixture_time(t);
  const double xm1 = std::expm1(2.0 * t);
  return (1.0 + p[0] * xm1) * (1.0 + p[1] * xm1) * (1.0 + p[2] * xm1);
}

std::vector<double> numerator_beta(double p, double q, int k) {
  check_bisector_domain(p, q);
  if (k == 3) {
    return {8.0 * q * (1.0 - q) * p * (1.0 - p),
            6.0 * (1.0 - q) * (1.0 - p) * (q + p * (1.0 - 4.0 * q)),
            2.0 * (2.0 - 6.0 * q + 5.0 * q * q - 2.0 * p * (3.0 - 10.0 * q + 9.0 * q * q) +
                   p * p * (5.0 - 18.0 * q + 12.0 * q * q)),
            2.0 * (q * (1.0 - 2.0 * q) + p * (1.0 - 6.0 * q + 7.0 * q * q) -
                   p * p * (2.0 - 7.0 * q + 4.0 * q * q))};
  }
  if (k == 1 || k == 2) {
    return {8.0 * q * p * (1.0 - p), 2.0 * (1.0 - p) * (3.0 * q + p * (1.0 - 8.0 * q)),
            2.0 * (1.0 - 2.0 * q - p * (3.0 - 7.0 * q) + p * p * (1.0 - 4.0 * q))};
  }
  throw InvalidInput("rate index must be 1, 2 or 3, got " + std::to_string(k));
}

double numerator_beta_denominator(double p, double q, int k, double t) {
  check_bisector_domain(p, q);
  check_mixture_time(t);
  if (k < 1 || k > 3) throw InvalidInput("rate index must be 1, 2 or 3, got " + std::to_string(k));
  const double x = std::exp(2.0 * t);
  const double d = (1.0 + p * (x - 1.0)) * (2.0 * p + (1.0 - 2.0 * p) * x) *
                   (2.0 * q + (1.0 - 2.0 * q) * x);
  return k == 3 ? d * (1.0 + q * (x - 1.0)) : d;
}

int descartes_sign_changes(std::span<const double> coeffs, double tol) {
  if (coeffs.empty()) throw InvalidInput("coefficient list is empty");
  int changes = 0;
  int last = 0;
  for (double c : coeffs) {
    if (std::abs(c) <= tol) continue;
    const int s = c > 0.0 ? 1 : -1;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

}  // namespace qdivide
