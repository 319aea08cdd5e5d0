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

#include "qdivide/divisibility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/LU>

#include "qdivide/error.hpp"
#include "qdivide/mixtures.hpp"
#include "qdivide/parallel.hpp"
#include "qdivide/pauli_channel.hpp"
#include "qdivide/random.hpp"

namespace qdivide {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Effective rates at one time. At t = infinity (mixtures only) `g` holds the
// leading asymptotic coefficients and `order` their power of e^{-2t}.
struct Sample {
  double t = 0.0;
  RateTriple g{};
  double scale = 0.0;
  int order = 0;
};

double max_abs(const RateTriple& g) {
  return std::max({std::abs(g[0]), std::abs(g[1]), std::abs(g[2])});
}

void validate_grid(std::span<const double> grid) {
  if (grid.empty()) throw InvalidInput("time grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] >= 0.0) || !std::isfinite(grid[i])) {
      throw InvalidInput("grid times must be finite and nonnegative");
    }
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw InvalidInput("grid times must be strictly increasing");
    }
  }
}

Sample asymptotic_sample(const MixtureWeights& p) {
  const AsymptoticRates e = asymptotic_expansion(p);
  Sample s;
  s.t = kInf;
  const bool constant = max_abs(e.constant) > 0.0;
  s.g = constant ? e.constant : e.decaying;
  s.order = constant ? 0 : 1;
  s.scale = max_abs(s.g);
  return s;
}

std::vector<Sample> samples(const RateModel& model, std::span<const double> grid,
                            bool with_infinity) {
  validate_grid(grid);
  std::vector<Sample> out;
  out.reserve(grid.size() + 1);
  for (double t : grid) {
    Sample s;
    s.t = t;
    s.g = effective_rates_at(model, t);
    s.scale = max_abs(s.g);
    out.push_back(s);
  }
  if (with_infinity) out.push_back(asymptotic_sample(model.weights()));
  return out;
}

double ratio(double num, double den) { return den > 0.0 ? num / den : 0.0; }

// Contributions of both samples at the common leading order.
std::pair<Sample, Sample> align(Sample a, Sample b) {
  if (a.order < b.order) {
    b.g = {0.0, 0.0, 0.0};
    b.scale = 0.0;
  } else if (b.order < a.order) {
    a.g = {0.0, 0.0, 0.0};
    a.scale = 0.0;
  }
  return {a, b};
}

std::string time_text(double t) {
  if (std::isinf(t)) return "t=inf";
  std::ostringstream os;
  os.precision(6);
  os << "t=" << t;
  return os.str();
}

std::string number_text(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

struct Criterion {
  explicit Criterion(std::string n) : name(std::move(n)) {}

  std::string name;
  double min = kInf;
  double argmin_t = 0.0;
  std::string argmin_what;
  std::optional<double> first_violation;
  std::string violation_what;

  template <class Describe>
  void add(double value, double t, double tol, Describe&& describe) {
    if (value < min) {
      min = value;
      argmin_t = t;
      argmin_what = describe();
    }
    if (!first_violation && value < -tol) {
      first_violation = t;
      violation_what = describe();
    }
  }

  void merge(const Criterion& other) {
    if (other.min < min) {
      min = other.min;
      argmin_t = other.argmin_t;
      argmin_what = other.argmin_what;
    }
    if (other.first_violation && (!first_violation || *other.first_violation < *first_violation)) {
      first_violation = other.first_violation;
      violation_what = other.violation_what;
    }
  }
};

enum class Sign { kSatisfied, kViolated, kBand };

Sign sign_of(double margin, double tol) {
  if (margin == 0.0 || margin >= tol) return Sign::kSatisfied;
  if (margin <= -tol) return Sign::kViolated;
  return Sign::kBand;
}

std::string rate_name(int k, int which = 0) {
  std::string s = "gamma_" + std::to_string(k + 1);
  if (which > 0) s += "^(" + std::to_string(which) + ")";
  return s;
}

Criterion cp_criterion(const std::vector<Sample>& ss, double tol, int which = 0) {
  Criterion c("rates");
  for (const Sample& s : ss) {
    for (int k = 0; k < 3; ++k) {
      const double v = ratio(s.g[k], s.scale);
      c.add(v, s.t, tol, [&] {
        return rate_name(k, which) + " normalized " + number_text(v) + " at " + time_text(s.t);
      });
    }
  }
  return c;
}

Criterion p_criterion(const std::vector<Sample>& ss, double tol, int which = 0) {
  Criterion c("pairwise sums");
  for (const Sample& s : ss) {
    for (int i = 0; i < 3; ++i) {
      for (int j = i + 1; j < 3; ++j) {
        const double v = ratio(s.g[i] + s.g[j], 2.0 * s.scale);
        c.add(v, s.t, tol, [&] {
          return rate_name(i, which) + " + " + rate_name(j, which) + " normalized " +
                 number_text(v) + " at " + time_text(s.t);
        });
      }
    }
  }
  return c;
}

Criterion cross_criterion(const std::vector<Sample>& s1, const std::vector<Sample>& s2,
                          double tol) {
  Criterion c("cross sums");
  for (std::size_t n = 0; n < s1.size(); ++n) {
    const auto [a, b] = align(s1[n], s2[n]);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        const double v = ratio(a.g[i] + b.g[j], a.scale + b.scale);
        c.add(v, a.t, tol, [&] {
          return rate_name(i, 1) + " + " + rate_name(j, 2) + " normalized " + number_text(v) +
                 " at " + time_text(a.t);
        });
      }
    }
  }
  return c;
}

DivisibilityVerdict verdict(DivisibilityLabel label, const Criterion& c) {
  DivisibilityVerdict v;
  v.label = label;
  v.margin = c.min;
  if (c.first_violation) {
    v.witness_time = c.first_violation;
    v.witness_detail = c.name + " violated: " + c.violation_what;
  } else {
    v.witness_detail = c.name + " minimum: " + c.argmin_what;
  }
  return v;
}

DivisibilityVerdict undetermined(const Criterion& c) {
  DivisibilityVerdict v = verdict(DivisibilityLabel::kUndetermined, c);
  v.witness_detail += " (inside tolerance band)";
  return v;
}

}  // namespace

std::string_view to_string(DivisibilityLabel label) {
  switch (label) {
    case DivisibilityLabel::kCpDivisible:
      return "CP_DIVISIBLE";
    case DivisibilityLabel::kPDivisibleOnly:
      return "P_DIVISIBLE_ONLY";
    case DivisibilityLabel::kNotPDivisible:
      return "NOT_P_DIVISIBLE";
    case DivisibilityLabel::kUndetermined:
      return "UNDETERMINED";
  }
  return "UNDETERMINED";
}

DivisibilityLabel parse_divisibility_label(std::string_view text) {
  for (auto l : {DivisibilityLabel::kCpDivisible, DivisibilityLabel::kPDivisibleOnly,
                 DivisibilityLabel::kNotPDivisible, DivisibilityLabel::kUndetermined}) {
    if (to_string(l) == text) return l;
  }
  throw InvalidInput("unknown divisibility label '" + std::string(text) + "'");
}

std::vector<double> log_spaced_grid(double lo, double hi, int points) {
  if (!(lo > 0.0) || !(hi > lo) || points < 2) {
    throw InvalidInput("log grid needs 0 < lo < hi and at least 2 points");
  }
  std::vector<double> g(points);
  const double a = std::log(lo), b = std::log(hi);
  for (int i = 0; i < points; ++i) g[i] = std::exp(a + (b - a) * i / (points - 1));
  g.front() = lo;
  g.back() = hi;
  return g;
}

std::vector<double> uniform_grid(double lo, double hi, int points) {
  if (!(lo >= 0.0) || !(hi > lo) || points < 2) {
    throw InvalidInput("uniform grid needs 0 <= lo < hi and at least 2 points");
  }
  std::vector<double> g(points);
  for (int i = 0; i < points; ++i) g[i] = lo + (hi - lo) * i / (points - 1);
  g.back() = hi;
  return g;
}

std::vector<double> default_grid() { return log_spaced_grid(1e-3, 20.0, 400); }

DivisibilityVerdict cp_divisible(const RateModel& model, std::span<const double> grid,
                                 double tol) {
  const auto ss = samples(model, grid, model.is_mixture());
  const Criterion cp = cp_criterion(ss, tol);
  switch (sign_of(cp.min, tol)) {
    case Sign::kSatisfied:
      return verdict(DivisibilityLabel::kCpDivisible, cp);
    case Sign::kBand:
      return undetermined(cp);
    case Sign::kViolated:
      break;
  }
  const Criterion p = p_criterion(ss, tol);
  switch (sign_of(p.min, tol)) {
    case Sign::kSatisfied:
      return verdict(DivisibilityLabel::kPDivisibleOnly, cp);
    case Sign::kBand:
      return undetermined(p);
    case Sign::kViolated:
      break;
  }
  return verdict(DivisibilityLabel::kNotPDivisible, p);
}

DivisibilityVerdict p_divisible(const RateModel& model, std::span<const double> grid,
                                double tol) {
  const auto ss = samples(model, grid, model.is_mixture());
  const Criterion p = p_criterion(ss, tol);
  switch (sign_of(p.min, tol)) {
    case Sign::kViolated:
      return verdict(DivisibilityLabel::kNotPDivisible, p);
    case Sign::kBand:
      return undetermined(p);
    case Sign::kSatisfied:
      break;
  }
  const Criterion cp = cp_criterion(ss, tol);
  return verdict(cp.min >= -tol ? DivisibilityLabel::kCpDivisible
                                : DivisibilityLabel::kPDivisibleOnly,
                 p);
}

DivisibilityVerdict tensor_p_divisible(const RateModel& model1, const RateModel& model2,
                                       std::span<const double> grid, double tol) {
  const bool inf = model1.is_mixture() && model2.is_mixture();
  const auto s1 = samples(model1, grid, inf);
  const auto s2 = samples(model2, grid, inf);

  Criterion all("product P-divisibility");
  Criterion p1 = p_criterion(s1, tol, 1);
  Criterion p2 = p_criterion(s2, tol, 2);
  Criterion cross = cross_criterion(s1, s2, tol);
  all.merge(p1);
  all.merge(p2);
  all.merge(cross);
  switch (sign_of(all.min, tol)) {
    case Sign::kViolated:
      return verdict(DivisibilityLabel::kNotPDivisible, all);
    case Sign::kBand:
      return undetermined(all);
    case Sign::kSatisfied:
      break;
  }
  const bool cp = cp_criterion(s1, tol).min >= -tol && cp_criterion(s2, tol).min >= -tol;
  return verdict(cp ? DivisibilityLabel::kCpDivisible : DivisibilityLabel::kPDivisibleOnly, all);
}

KossakowskiMatrix::KossakowskiMatrix(const Eigen::Matrix3cd& entries, double tol) {
  const double dev = (entries - entries.adjoint()).cwiseAbs().maxCoeff();
  if (!(dev <= tol)) {
    throw InvalidInput("Kossakowski matrix is not Hermitian (deviation " + number_text(dev) +
                       ")");
  }
  k_ = 0.5 * (entries + entries.adjoint());
}

KossakowskiMatrix KossakowskiMatrix::pauli(const RateTriple& rates) {
  Eigen::Matrix3cd k = Eigen::Matrix3cd::Zero();
  for (int i = 0; i < 3; ++i) k(i, i) = 0.5 * rates[i];
  return KossakowskiMatrix(k);
}

KossakowskiMatrix KossakowskiMatrix::of(const RateModel& model, double t) {
  return pauli(effective_rates_at(model, t));
}

double KossakowskiMatrix::min_eigenvalue() const {
  return hermitian_eigenvalues(SmallMatrix(k_)).front();
}

ConjugationSpec conjugation_matrix(const Eigen::Matrix2cd& v, std::string name) {
  if (!(std::abs(v.determinant()) > 1e-12)) {
    throw InvalidInput("conjugation matrix " + name + " is singular");
  }
  const Eigen::Matrix2cd vinv = v.inverse();
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  Eigen::Matrix3cd vcal;
  std::array<Eigen::Matrix2cd, 3> f;
  for (int i = 0; i < 3; ++i) f[i] = pauli(i + 1) * inv_sqrt2;
  for (int i = 0; i < 3; ++i) {
    const Eigen::Matrix2cd conj = v * f[i].adjoint() * vinv;
    for (int j = 0; j < 3; ++j) vcal(i, j) = (f[j] * conj).trace();
  }
  const double scale = std::max(1.0, v.norm() * vinv.norm());
  for (int i = 0; i < 3; ++i) {
    Eigen::Matrix2cd rebuilt = Eigen::Matrix2cd::Zero();
    for (int j = 0; j < 3; ++j) rebuilt += vcal(i, j) * f[j].adjoint();
    const double err = (rebuilt - v * f[i].adjoint() * vinv).cwiseAbs().maxCoeff();
    if (!(err <= 1e-10 * scale)) {
      throw Error("conjugation reconstruction failed for " + name + " (error " +
                  number_text(err) + ")");
    }
  }
  return {std::move(name), v, vcal};
}

std::vector<ConjugationSpec> standard_conjugations() {
  const double r = 1.0 / std::sqrt(2.0);
  std::vector<ConjugationSpec> out;
  out.push_back(conjugation_matrix(Eigen::Matrix2cd::Identity(), "identity"));
  for (auto [k, l] : {std::pair{1, 2}, std::pair{1, 3}, std::pair{2, 3}}) {
    const Eigen::Matrix2cd v = (pauli(k) + pauli(l)) * r;
    out.push_back(conjugation_matrix(v, "V" + std::to_string(k) + std::to_string(l)));
  }
  return out;
}

double necessary_tensor_condition(const KossakowskiMatrix& k1, const KossakowskiMatrix& k2,
                                  const ConjugationSpec& spec) {
  Eigen::Matrix3cd m = k1.entries() + spec.vcal.adjoint() * k2.entries() * spec.vcal;
  m = 0.5 * (m + m.adjoint()).eval();
  return hermitian_eigenvalues(SmallMatrix(m)).front();
}

bool sufficient_condition_check(const RateModel& model1, const RateModel& model2, int i, int j,
                                std::span<const double> grid, double tol) {
  if (i < 1 || i > 3 || j < 1 || j > 3) throw InvalidInput("rate indices must be in 1..3");
  --i;
  --j;
  const bool inf = model1.is_mixture() && model2.is_mixture();
  const auto s1 = samples(model1, grid, inf);
  const auto s2 = samples(model2, grid, inf);
  for (std::size_t n = 0; n < s1.size(); ++n) {
    const auto [a, b] = align(s1[n], s2[n]);
    const double den = a.scale + b.scale;
    auto ok = [&](double v) { return ratio(v, den) >= -tol; };
    for (int k = 0; k < 3; ++k) {
      if (k != i && !(ok(a.g[k]) && ok(a.g[k] + a.g[i]))) return false;
      if (k != j && !(ok(b.g[k]) && ok(b.g[k] + b.g[j]))) return false;
      if (!ok(a.g[k] + b.g[j]) || !ok(a.g[i] + b.g[k])) return false;
    }
  }
  return true;
}

double positivity_functional(const RateTriple& g1, const RateTriple& g2, const Vector4c& phi,
                             const Vector4c& psi) {
  Eigen::Matrix2cd f, s;
  f << phi(0), phi(1), phi(2), phi(3);
  s << psi(0), psi(1), psi(2), psi(3);
  const Eigen::Matrix2cd left = s * f.adjoint();
  const Eigen::Matrix2cd right = (f.adjoint() * s).transpose();
  double g = 0.0;
  for (int k = 0; k < 3; ++k) {
    g += 0.5 * g1[k] * std::norm((pauli(k + 1) * left).trace());
    g += 0.5 * g2[k] * std::norm((pauli(k + 1) * right).trace());
  }
  return g;
}

double positivity_functional_sample(const RateModel& model1, const RateModel& model2, double t,
                                    int samples, std::uint64_t seed) {
  if (samples < 1) throw InvalidInput("positivity sampling needs at least one sample");
  const RateTriple g1 = effective_rates_at(model1, t);
  const RateTriple g2 = effective_rates_at(model2, t);
  std::vector<double> values(samples);
  parallel_for(values.size(), [&](std::size_t n) {
    auto rng = rng_stream(seed, n);
    std::normal_distribution<double> normal;
    auto gaussian = [&] {
      Vector4c v;
      for (int i = 0; i < 4; ++i) v(i) = Complex(normal(rng), normal(rng));
      return v;
    };
    // First two columns of the QR factor of a Gaussian matrix.
    Vector4c phi = gaussian().normalized();
    Vector4c psi = gaussian();
    psi -= phi.dot(psi) * phi;
    psi.normalize();
    values[n] = positivity_functional(g1, g2, phi, psi);
  });
  return *std::min_element(values.begin(), values.end());
}

}  // namespace qdivide
