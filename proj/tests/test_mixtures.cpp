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

#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "doctest.h"
#include "qdivide/divisibility.hpp"
#include "qdivide/error.hpp"
#include "qdivide/mixtures.hpp"

using namespace qdivide;

namespace {

MixtureWeights random_interior(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (;;) {
    double a = u(rng), b = u(rng);
    if (a + b > 1.0) {
      a = 1.0 - a;
      b = 1.0 - b;
    }
    if (a > 1e-3 && b > 1e-3 && 1.0 - a - b > 1e-3) return MixtureWeights(a, b, 1.0 - a - b);
  }
}

// Rates from central differences of log eigenvalues, evaluated in place.
RateTriple rates_by_differences(const MixtureWeights& p, double t) {
  const double h = 1e-5;
  std::array<double, 3> s{};
  for (int k = 0; k < 3; ++k) {
    auto lg = [&](double tau) { return std::log(p[k] + std::exp(-2.0 * tau) * (1.0 - p[k])); };
    s[k] = -(lg(t + h) - lg(t - h)) / (2.0 * h);
  }
  return {0.5 * (s[1] + s[2] - s[0]), 0.5 * (s[0] + s[2] - s[1]), 0.5 * (s[0] + s[1] - s[2])};
}

double polyval(const std::vector<double>& c, double x) {
  double v = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) v = v * x + c[i];
  return v;
}

}  // namespace

TEST_CASE("mixture eigenvalues") {
  const auto one = mixture_eigenvalues(MixtureWeights(0.2, 0.3, 0.5), 0.0);
  for (double v : one) CHECK(v == 1.0);
  const auto e = mixture_eigenvalues(MixtureWeights(1.0, 0.0, 0.0), 1.0);
  CHECK(e[1] == 1.0);
  CHECK(std::abs(e[2] - std::exp(-2.0)) < 1e-16);
  CHECK(std::abs(e[3] - std::exp(-2.0)) < 1e-16);
  const auto far = mixture_eigenvalues(MixtureWeights(0.2, 0.3, 0.5), 30.0);
  CHECK(std::abs(far[1] - 0.2) < 1e-15);
  CHECK(std::abs(far[3] - 0.5) < 1e-15);
}

TEST_CASE("mixture rates") {
  for (double t : {0.0, 0.5, 2.0, 9.0}) {
    const RateTriple g = mixture_rates(MixtureWeights(0.5, 0.5, 0.0), t);
    CHECK(std::abs(g[2] + std::tanh(t)) < 1e-12);
  }
  const RateTriple c = mixture_rates(MixtureWeights(1 / 3., 1 / 3., 1 / 3.), 0.0);
  for (double v : c) CHECK(std::abs(v - 2.0 / 3.0) < 1e-15);

  std::mt19937_64 rng(2);
  for (int draw = 0; draw < 50; ++draw) {
    const MixtureWeights p = random_interior(rng);
    const RateTriple g0 = mixture_rates(p, 0.0);
    for (int k = 0; k < 3; ++k) CHECK(std::abs(g0[k] - 2.0 * p[k]) < 1e-15);
    for (double t : {0.3, 1.0, 4.0}) {
      const RateTriple g = mixture_rates(p, t);
      const RateTriple fd = rates_by_differences(p, t);
      for (int k = 0; k < 3; ++k) CHECK(std::abs(g[k] - fd[k]) < 1e-8);
      const double mu3 = -(1.0 - p[2]) / (1.0 + p[2] * std::expm1(2.0 * t));
      CHECK(std::abs(g[0] + g[1] + 2.0 * mu3) < 1e-14);
    }
  }
}

TEST_CASE("pairwise rate sums never go negative") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int draw = 0; draw < 500; ++draw) {
    double a = u(rng), b = u(rng);
    if (a + b > 1.0) {
      a = 1.0 - a;
      b = 1.0 - b;
    }
    const MixtureWeights p(a, b, std::max(0.0, 1.0 - a - b));
    for (int i = 0; i < 40; ++i) {
      const double t = 20.0 * u(rng);
      const RateTriple g = mixture_rates(p, t);
      CHECK(g[0] + g[1] >= -1e-12);
      CHECK(g[0] + g[2] >= -1e-12);
      CHECK(g[1] + g[2] >= -1e-12);
      int negative = 0;
      for (double v : g) negative += v < -1e-12;
      CHECK(negative <= 1);
    }
  }
}

TEST_CASE("each rate changes sign at most once") {
  std::mt19937_64 rng(4);
  const auto grid = uniform_grid(1e-3, 20.0, 4000);
  for (int draw = 0; draw < 200; ++draw) {
    const MixtureWeights p = random_interior(rng);
    for (int k = 0; k < 3; ++k) {
      int flips = 0;
      int last = 0;
      for (double t : grid) {
        const double g = mixture_rates(p, t)[k];
        const int s = g > 1e-14 ? 1 : (g < -1e-14 ? -1 : 0);
        if (s != 0 && last != 0 && s != last) ++flips;
        if (s != 0) last = s;
      }
      CHECK(flips <= 1);
    }
    const auto a = numerator_alpha(p);
    CHECK(descartes_sign_changes(a) <= 1);
  }
}

TEST_CASE("asymptotic coefficients") {
  const auto c = asymptotic_rate_coefficients(MixtureWeights(1 / 3., 1 / 3., 1 / 3.));
  for (double v : c) CHECK(std::abs(v - 2.0 / 27.0) < 1e-15);
  CHECK_THROWS_AS(asymptotic_rate_coefficients(MixtureWeights(0.5, 0.5, 0.0)), BoundaryCase);

  std::mt19937_64 rng(5);
  for (int draw = 0; draw < 50; ++draw) {
    const MixtureWeights p = random_interior(rng);
    const auto a = asymptotic_rate_coefficients(p);
    const double prod = p[0] * p[1] * p[2];
    const RateTriple g = mixture_rates(p, 15.0);
    for (int k = 0; k < 3; ++k) {
      const double lead = a[k] / prod;
      if (std::abs(lead) < 1e-3) continue;
      CHECK(std::abs(std::exp(30.0) * g[k] - lead) < 1e-6 * std::abs(lead) + 1e-9);
    }
  }
}

TEST_CASE("asymptotic coefficients on the bisector") {
  const double ps = bisector_threshold();
  for (double p : {0.1, 0.3, ps - 1e-3, ps + 1e-3, 0.45}) {
    const auto a = asymptotic_rate_coefficients(MixtureWeights::bisector(p));
    const double reduced = 2.0 * p * (p * p - 3.0 * p + 1.0);
    CHECK(std::abs(a[2] - reduced) < 1e-14);
    CHECK((a[2] > 0) == (p < ps));
  }
}

TEST_CASE("CP region inequalities") {
  const RegionTest c = cp_region_test(MixtureWeights(1 / 3., 1 / 3., 1 / 3.));
  CHECK(c.inside);
  for (double m : c.margins) CHECK(std::abs(m - 2.0 / 27.0) < 1e-15);
  CHECK_FALSE(cp_region_test(MixtureWeights(0.5, 0.5, 0.0)).inside);
  const double ps = bisector_threshold();
  CHECK(cp_region_test(MixtureWeights::bisector(ps - 1e-6)).inside);
  CHECK_FALSE(cp_region_test(MixtureWeights::bisector(ps + 1e-6)).inside);
  for (int k = 0; k < 3; ++k) {
    std::array<double, 3> e{};
    e[k] = 1.0;
    CHECK(cp_region_test(MixtureWeights(e[0], e[1], e[2])).inside);
  }

  // Margins are the asymptotic numerators written with p3 = 1 - p1 - p2.
  std::mt19937_64 rng(6);
  for (int draw = 0; draw < 100; ++draw) {
    const MixtureWeights p = random_interior(rng);
    const auto a = asymptotic_rate_coefficients(p);
    const auto m = cp_region_test(p).margins;
    for (int k = 0; k < 3; ++k) CHECK(std::abs(a[k] - m[k]) < 1e-14);
  }
}

TEST_CASE("negative rate index") {
  CHECK(negative_rate_index(MixtureWeights(0.5, 0.5, 0.0)) == 3);
  CHECK(negative_rate_index(MixtureWeights(0.4, 0.4, 0.2)) == 3);
  CHECK(negative_rate_index(MixtureWeights(0.0, 0.5, 0.5)) == 1);
  CHECK(negative_rate_index(MixtureWeights(0.45, 0.1, 0.45)) == 2);
  CHECK(negative_rate_index(MixtureWeights(1 / 3., 1 / 3., 1 / 3.)) == 0);
}

TEST_CASE("bisector tensor inequalities") {
  const double r2 = std::sqrt(2.0) - 1.0;
  const RegionTest edge = bisector_tensor_test(r2, 1.0 / 3.0);
  CHECK(edge.inside);
  for (double m : edge.margins) CHECK(std::abs(m) < 1e-15);
  CHECK(bisector_tensor_test(0.39, 1.0 / 3.0).inside);
  const RegionTest zero = bisector_tensor_test(0.39, 0.0);
  CHECK_FALSE(zero.inside);
  CHECK(std::abs(zero.margins[0] - 0.39 * (1.0 - 0.78)) < 1e-15);
  CHECK(std::abs(zero.margins[1] - (1.0 - 3.0 * 0.39 + 0.39 * 0.39)) < 1e-15);
  CHECK(zero.margins[1] < 0.0);
  CHECK_THROWS_AS(bisector_tensor_test(0.3, 0.2), DomainError);
  CHECK_THROWS_AS(bisector_tensor_test(0.4, 0.5), DomainError);
}

TEST_CASE("bisector q interval") {
  const QInterval at = bisector_q_interval(std::sqrt(2.0) - 1.0);
  CHECK_FALSE(at.empty);
  CHECK(at.width() < 1e-6);
  CHECK(at.lo <= 1.0 / 3.0);
  CHECK(at.hi >= 1.0 / 3.0);
  const QInterval mid = bisector_q_interval(0.39);
  CHECK(mid.lo < 1.0 / 3.0);
  CHECK(mid.hi > 1.0 / 3.0);
  CHECK(bisector_tensor_test(0.39, mid.lo + 1e-9).inside);
  CHECK_FALSE(bisector_tensor_test(0.39, mid.lo - 1e-6).inside);
  CHECK(bisector_q_interval(0.42).empty);
  // The interval shrinks as p grows.
  CHECK(bisector_q_interval(0.385).width() > bisector_q_interval(0.395).width());
}

TEST_CASE("tensor region at finite and infinite time") {
  const MixtureWeights pt(0.4, 0.4, 0.2);
  std::mt19937_64 rng(7);
  for (int draw = 0; draw < 50; ++draw) {
    const MixtureWeights q = random_interior(rng);
    const RegionTest r = tensor_region_test(pt, q, 0.0);
    CHECK(r.inside);
    for (int k = 0; k < 3; ++k) CHECK(std::abs(r.margins[k] - 2.0 * (pt[2] + q[k])) < 1e-14);
  }
  CHECK(tensor_region_test(pt, MixtureWeights(0.3, 0.3, 0.4), kInfiniteTime).inside);
  CHECK_FALSE(tensor_region_test(pt, MixtureWeights(0.01, 0.01, 0.98), kInfiniteTime).inside);
  CHECK_THROWS_AS(tensor_region_test(MixtureWeights(1 / 3., 1 / 3., 1 / 3.), pt, 1.0),
                  PreconditionError);

  // The asymptotic margins are the limits of e^{2t} times the finite sums.
  for (int draw = 0; draw < 100; ++draw) {
    const MixtureWeights q = random_interior(rng);
    const auto inf = tensor_region_test(pt, q, kInfiniteTime).margins;
    const auto fin = tensor_region_test(pt, q, 12.0).margins;
    for (int k = 0; k < 3; ++k) {
      CHECK(std::abs(std::exp(24.0) * fin[k] - inf[k]) < 1e-5 * (1.0 + std::abs(inf[k])));
    }
  }
}

TEST_CASE("alpha numerator") {
  const auto enm = numerator_alpha(MixtureWeights(0.5, 0.5, 0.0));
  CHECK(std::abs(enm[0] - 0.25) < 1e-15);
  CHECK(std::abs(enm[1]) < 1e-15);
  CHECK(std::abs(enm[2] + 0.25) < 1e-15);
  CHECK(std::abs(numerator_alpha(MixtureWeights(1 / 3., 1 / 3., 1 / 3.))[2] - 2.0 / 27.0) < 1e-15);

  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 5.0);
  for (int draw = 0; draw < 200; ++draw) {
    const MixtureWeights p = random_interior(rng);
    const auto a = numerator_alpha(p);
    CHECK(a[0] >= 0.0);
    CHECK(a[1] >= 0.0);
    const double t = u(rng);
    const double x = std::exp(2.0 * t);
    const double rebuilt =
        (a[0] + a[1] * x + a[2] * x * x) / numerator_alpha_denominator(p, t);
    CHECK(std::abs(rebuilt - mixture_rates(p, t)[2]) < 1e-12);
  }
  for (double t : {0.2, 1.0, 3.0}) {
    const double x = std::exp(2.0 * t);
    const double rebuilt = (0.25 - 0.25 * x * x) / numerator_alpha_denominator(MixtureWeights(0.5, 0.5, 0.0), t);
    CHECK(std::abs(rebuilt + std::tanh(t)) < 1e-12);
  }
}

TEST_CASE("beta numerators reconstruct rate sums") {
  const double ps = bisector_threshold();
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> up(ps + 1e-6, 0.5), uq(0.0, ps), ut(0.0, 4.0);
  for (int draw = 0; draw < 200; ++draw) {
    const double p = up(rng), q = uq(rng), t = ut(rng);
    const RateTriple gp = mixture_rates(MixtureWeights::bisector(p), t);
    const RateTriple gq = mixture_rates(MixtureWeights::bisector(q), t);
    for (int k = 1; k <= 3; ++k) {
      const auto b = numerator_beta(p, q, k);
      CHECK(b.size() == (k == 3 ? 4u : 3u));
      const double rebuilt = polyval(b, std::exp(2.0 * t)) / numerator_beta_denominator(p, q, k, t);
      CHECK(std::abs(rebuilt - (gp[2] + gq[k - 1])) < 1e-10);
    }
  }
  const auto b0 = numerator_beta(0.45, 0.0, 3);
  CHECK(b0[0] == 0.0);
  CHECK(numerator_beta(0.45, 0.0, 1)[0] == 0.0);
  CHECK_THROWS_AS(numerator_beta(0.3, 0.1, 3), DomainError);
  CHECK_THROWS_AS(numerator_beta(0.45, 0.1, 4), InvalidInput);
}

TEST_CASE("beta coefficients from a fit of sampled rate sums") {
  // Multiply the rate sum by its denominator at four times and solve the
  // Vandermonde system in x = e^{2t}.
  const double p = 0.45, q = 0.2;
  const std::array<double, 4> ts{0.1, 0.35, 0.6, 0.85};
  Eigen::Matrix4d v;
  Eigen::Vector4d rhs;
  for (int i = 0; i < 4; ++i) {
    const double x = std::exp(2.0 * ts[i]);
    for (int j = 0; j < 4; ++j) v(i, j) = std::pow(x, j);
    const double sum = mixture_rates(MixtureWeights::bisector(p), ts[i])[2] +
                       mixture_rates(MixtureWeights::bisector(q), ts[i])[2];
    rhs(i) = sum * numerator_beta_denominator(p, q, 3, ts[i]);
  }
  const Eigen::Vector4d fit = v.colPivHouseholderQr().solve(rhs);
  const auto b = numerator_beta(p, q, 3);
  for (int j = 0; j < 4; ++j) CHECK(std::abs(fit(j) - b[j]) < 1e-7);
}

TEST_CASE("beta sign structure above the bisector threshold") {
  const double ps = bisector_threshold();
  for (int i = 0; i < 100; ++i) {
    const double p = ps + (i + 0.5) * (0.5 - ps) / 100.0;
    for (int j = 0; j < 100; ++j) {
      const double q = (j + 0.5) * ps / 100.0;
      const auto b3 = numerator_beta(p, q, 3);
      CHECK(b3[0] > 0.0);
      CHECK(b3[1] > 0.0);
      for (int k = 1; k <= 3; ++k) CHECK(descartes_sign_changes(numerator_beta(p, q, k)) <= 1);
    }
  }
}

TEST_CASE("descartes sign changes") {
  CHECK(descartes_sign_changes(std::vector<double>{1, 1, -1}) == 1);
  CHECK(descartes_sign_changes(std::vector<double>{0.25, 0, -0.25}) == 1);
  CHECK(descartes_sign_changes(std::vector<double>{1, 1, 1}) == 0);
  CHECK(descartes_sign_changes(std::vector<double>{1, -1, 1, -1}) == 3);
  CHECK(descartes_sign_changes(std::vector<double>{1, 1e-13, -1}) == 1);
  CHECK(descartes_sign_changes(std::vector<double>{-1e-13, 1}) == 0);
  CHECK_THROWS_AS(descartes_sign_changes(std::vector<double>{}), InvalidInput);
}

TEST_CASE("bisector threshold") {
  CHECK(std::abs(bisector_threshold() - 0.5 * (3.0 - std::sqrt(5.0))) < 1e-16);
}
