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

#include "qdivide/rate_model.hpp"

#include <cmath>
#include <sstream>
#include <type_traits>

#include "qdivide/error.hpp"
#include "quadrature.hpp"

namespace qdivide {

namespace {

// Node integrals of the piecewise quadratic that interpolates each pair of
// intervals [x_{2m}, x_{2m+2}]; a trailing odd interval uses the last three
// nodes.
std::vector<RateTriple> simpson_cumulative(const std::vector<double>& x,
                                           const std::vector<RateTriple>& f) {
  const std::size_t n = x.size();
  std::vector<RateTriple> out(n, RateTriple{0.0, 0.0, 0.0});
  const bool linear = n < 3;
  for (std::size_t i = 1; i < n; ++i) {
    const std::size_t b = detail::quadratic_base(n, i - 1);
    for (int k = 0; k < 3; ++k) {
      const double f2 = linear ? 0.0 : f[b + 2][k];
      out[i][k] = out[i - 1][k] + detail::stencil_integral(&x[b], f[b][k], f[b + 1][k], f2,
                                                           x[i - 1], x[i], linear);
    }
  }
  return out;
}

}  // namespace

MixtureWeights::MixtureWeights(double p1, double p2, double p3) : p_{p1, p2, p3} {
  for (double v : p_) {
    if (!std::isfinite(v) || v < 0.0) {
      throw InvalidInput("mixture weights must be finite and nonnegative: " + to_string());
    }
  }
  if (std::abs(p1 + p2 + p3 - 1.0) > 1e-12) {
    throw InvalidInput("mixture weights must sum to 1: " + to_string());
  }
}

MixtureWeights MixtureWeights::bisector(double p) {
  if (p < 0.0 || p > 0.5) throw InvalidInput("bisector parameter must lie in [0, 1/2]");
  return MixtureWeights(p, p, 1.0 - 2.0 * p);
}

bool MixtureWeights::interior() const { return p_[0] > 0.0 && p_[1] > 0.0 && p_[2] > 0.0; }

bool MixtureWeights::is_corner() const {
  int zeros = 0;
  for (double v : p_) zeros += (v == 0.0);
  return zeros == 2;
}

std::string MixtureWeights::to_string() const {
  std::ostringstream os;
  os.precision(17);
  os << "(" << p_[0] << ", " << p_[1] << ", " << p_[2] << ")";
  return os.str();
}

RateModel::RateModel(Kind kind, double coupling) : kind_(std::move(kind)), coupling_(coupling) {
  if (!(coupling > 0.0) || !std::isfinite(coupling)) {
    throw InvalidInput("coupling lambda must be a finite positive number");
  }
}

RateModel RateModel::constants(double g1, double g2, double g3, double coupling) {
  for (double g : {g1, g2, g3}) {
    if (!std::isfinite(g)) throw InvalidInput("constant rates must be finite");
  }
  return RateModel(ConstantRates{{g1, g2, g3}}, coupling);
}

RateModel RateModel::sinusoid(double omega, double coupling) {
  if (!std::isfinite(omega)) throw InvalidInput("omega must be finite");
  return RateModel(SinusoidRates{omega}, coupling);
}

RateModel RateModel::mixture(const MixtureWeights& p) { return RateModel(MixtureRates{p}, 1.0); }

RateModel RateModel::tabulated(std::vector<double> times, std::vector<RateTriple> rates,
                               double coupling) {
  if (times.size() < 2) throw InvalidInput("tabulated rates need at least two grid points");
  if (times.size() != rates.size()) {
    throw InvalidInput("tabulated rates: time grid and rate list differ in length");
  }
  if (times.front() != 0.0) throw InvalidInput("tabulated rates: grid must start at t = 0");
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) {
      throw InvalidInput("tabulated rates: time grid must be strictly increasing");
    }
  }
  for (const auto& r : rates) {
    for (double g : r) {
      if (!std::isfinite(g)) throw InvalidInput("tabulated rates must be finite");
    }
  }
  TabulatedRates tab{std::move(times), std::move(rates), {}};
  tab.cumulative = simpson_cumulative(tab.times, tab.rates);
  return RateModel(std::move(tab), coupling);
}

RateModel RateModel::with_coupling(double coupling) const {
  if (is_mixture()) throw InvalidInput("mixture models have coupling fixed to 1");
  return RateModel(kind_, coupling);
}

const MixtureWeights& RateModel::weights() const {
  if (const auto* m = std::get_if<MixtureRates>(&kind_)) return m->p;
  throw InvalidInput("rate model is not a dephasing mixture");
}

std::string RateModel::describe() const {
  std::ostringstream os;
  os.precision(17);
  std::visit(
      [&](const auto& k) {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, ConstantRates>) {
          os << "constants(" << k.g[0] << ", " << k.g[1] << ", " << k.g[2] << ")";
        } else if constexpr (std::is_same_v<T, SinusoidRates>) {
          os << "sinusoid3(omega=" << k.omega << ")";
        } else if constexpr (std::is_same_v<T, MixtureRates>) {
          os << "mixture" << k.p.to_string();
        } else {
          os << "tabulated(" << k.times.size() << " nodes on [0, " << k.times.back() << "])";
        }
      },
      kind_);
  if (!is_mixture()) os << " lambda=" << coupling_;
  return os.str();
}

}  // namespace qdivide
