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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>

#include "qdivide/bfi.hpp"
#include "qdivide/diagram.hpp"
#include "qdivide/divisibility.hpp"
#include "qdivide/mixtures.hpp"
#include "qdivide/pauli_channel.hpp"

using namespace qdivide;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

MixtureWeights random_weights(std::mt19937_64& rng, bool interior) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (;;) {
    double a = u(rng), b = u(rng);
    if (a + b > 1.0) {
      a = 1.0 - a;
      b = 1.0 - b;
    }
    const double c = std::max(0.0, 1.0 - a - b);
    if (!interior || (a > 1e-6 && b > 1e-6 && c > 1e-6)) return MixtureWeights(a, b, c);
  }
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

Outcome enm_closed_form() {
  const MixtureWeights p(0.5, 0.5, 0.0);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double t = 10.0 * i / 99.0;
    const RateTriple g = mixture_rates(p, t);
    worst = std::max({worst, std::abs(g[0] - 1.0), std::abs(g[1] - 1.0),
                      std::abs(g[2] + std::tanh(t))});
  }
  return {worst <= 1e-12, "max error " + num(worst)};
}

Outcome generator_reconstruction() {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> ut(0.01, 10.0);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const MixtureWeights p = random_weights(rng, true);
    const RateModel m = RateModel::mixture(p);
    for (int j = 0; j < 20; ++j) {
      const double t = ut(rng);
      const RateTriple a = numeric_generator_rates(m, t, 1e-5);
      const RateTriple b = mixture_rates(p, t);
      for (int k = 0; k < 3; ++k) worst = std::max(worst, std::abs(a[k] - b[k]));
    }
  }
  return {worst <= 1e-6, "max error " + num(worst)};
}

Outcome bisector_root() {
  auto reg3 = [](double p) { return cp_region_test(MixtureWeights::bisector(p)).margins[2]; };
  double lo = 0.2, hi = 0.5;
  if (!(reg3(lo) > 0.0 && reg3(hi) < 0.0)) return {false, "no sign change on [0.2, 0.5]"};
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    (reg3(mid) > 0.0 ? lo : hi) = mid;
  }
  const double root = 0.5 * (lo + hi);
  const double err = std::abs(root - 0.5 * (3.0 - std::sqrt(5.0)));
  return {err <= 1e-10, "root " + num(root) + ", error " + num(err)};
}

Outcome fig2_collapse() {
  const QInterval q = bisector_q_interval(std::sqrt(2.0) - 1.0);
  const bool ok = !q.empty && q.width() < 1e-6 && q.lo <= 1.0 / 3.0 && q.hi >= 1.0 / 3.0;
  return {ok, "interval [" + num(q.lo) + ", " + num(q.hi) + "], width " + num(q.width())};
}

Outcome example1_phase() {
  const auto grid = log_spaced_grid(1e-3, 50.0, 2000);
  int wrong = 0;
  for (double lambda : {0.25, 0.5, 1.0, 2.0}) {
    for (double omega : {-2.0, -1.0, 1.0, 2.0}) {
      const RateModel m = RateModel::sinusoid(omega, lambda);
      bool cp = true;
      for (double t : grid) cp = cp && is_cptp(decay_factors(m, t)).completely_positive;
      if (omega > 0 && !cp) ++wrong;
      if (omega < 0 && lambda < std::abs(omega) && cp) ++wrong;
    }
  }
  return {wrong == 0, std::to_string(wrong) + " of 16 cells contradict the expected phase"};
}

Outcome opposite_sinusoids() {
  const RateModel m1 = RateModel::sinusoid(1.0);
  const RateModel m2 = RateModel::sinusoid(-1.0);
  const auto grid = default_grid();
  const auto v = tensor_p_divisible(m1, m2, grid);
  const bool tensor_ok =
      v.label == DivisibilityLabel::kCpDivisible || v.label == DivisibilityLabel::kPDivisibleOnly;
  const bool singles_not_cp = cp_divisible(m1, grid).label != DivisibilityLabel::kCpDivisible &&
                              cp_divisible(m2, grid).label != DivisibilityLabel::kCpDivisible;
  double worst = 1e300;
  const auto times = uniform_grid(0.1, 4.0 * std::numbers::pi, 50);
  for (std::size_t i = 0; i < times.size(); ++i)
    worst = std::min(worst, positivity_functional_sample(m1, m2, times[i], 10000, 500 + i));
  const bool ok = tensor_ok && singles_not_cp && worst >= -1e-9;
  return {ok, "tensor " + std::string(to_string(v.label)) + ", singles not CP " +
                  (singles_not_cp ? "yes" : "no") + ", min functional " + num(worst)};
}

Outcome self_product_equivalence() {
  std::mt19937_64 rng(107);
  const auto grid = default_grid();
  int disagree = 0, undetermined = 0, cp = 0;
  for (int i = 0; i < 200; ++i) {
    const RateModel m = RateModel::mixture(random_weights(rng, false));
    const auto single = cp_divisible(m, grid);
    const auto both = tensor_p_divisible(m, m, grid);
    if (single.label == DivisibilityLabel::kUndetermined ||
        both.label == DivisibilityLabel::kUndetermined) {
      ++undetermined;
      continue;
    }
    const bool a = single.label == DivisibilityLabel::kCpDivisible;
    const bool b = both.label != DivisibilityLabel::kNotPDivisible;
    cp += a;
    disagree += a != b;
  }
  return {disagree == 0, std::to_string(disagree) + " disagreements, " + std::to_string(cp) +
                             " CP-divisible, " + std::to_string(undetermined) + " undetermined"};
}

Outcome no_single_map_bfi() {
  std::mt19937_64 rng(108);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto grid = default_witness_grid();
  int revivals = 0;
  double worst = -1e300;
  for (int i = 0; i < 100; ++i) {
    const RateModel m = RateModel::mixture(random_weights(rng, false));
    for (int j = 0; j < 100; ++j) {
      const bool pure = j % 2 == 0;
      HermitianMatrix rho = pure ? haar_pure_state(2, rng) : random_density_matrix(2, rng);
      HermitianMatrix sigma = pure ? haar_pure_state(2, rng) : random_density_matrix(2, rng);
      const Trajectory tr =
          trajectory(m, nullptr, HelstromSpec(rho, sigma, u(rng)), grid, TrajectoryMode::kSingle);
      const auto iv = detect_bfi(tr, 1e-9);
      revivals += !iv.empty();
      for (std::size_t k = 1; k < tr.values.size(); ++k)
        worst = std::max(worst, (tr.values[k] - tr.values[k - 1]) / (tr.times[k] - tr.times[k - 1]));
    }
  }
  return {revivals == 0,
          std::to_string(revivals) + " revivals in 10000 trajectories, max slope " + num(worst)};
}

Outcome sbfi_demonstration() {
  bool ok = true;
  std::string detail;
  for (const MixtureWeights& p :
       {MixtureWeights(0.5, 0.5, 0.0), MixtureWeights(0.45, 0.45, 0.1),
        MixtureWeights(0.4, 0.4, 0.2)}) {
    const SbfiReport r = sbfi_report(RateModel::mixture(p), 2000, 7);
    const bool this_ok = r.sbfi && r.witness_verified && r.witness.max_derivative > 1e-4;
    ok = ok && this_ok;
    if (!detail.empty()) detail += "; ";
    detail += "(" + num(p[0]) + ", " + num(p[1]) + ", " + num(p[2]) + ") slope " + num(r.witness.max_derivative) +
              (this_ok ? "" : " (rejected)");
  }
  return {ok, detail};
}

Outcome sign_structure() {
  const double ps = bisector_threshold();
  int beta_bad = 0;
  for (int i = 0; i < 100; ++i) {
    const double p = ps + (i + 0.5) * (0.5 - ps) / 100.0;
    for (int j = 0; j < 100; ++j) {
      const double q = (j + 0.5) * ps / 100.0;
      for (int k = 1; k <= 3; ++k) beta_bad += descartes_sign_changes(numerator_beta(p, q, k)) > 1;
    }
  }
  std::mt19937_64 rng(110);
  const auto grid = uniform_grid(1e-3, 20.0, 2000);
  int alpha_bad = 0, flips_bad = 0;
  for (int i = 0; i < 10000; ++i) {
    const MixtureWeights p = random_weights(rng, true);
    alpha_bad += descartes_sign_changes(numerator_alpha(p)) > 1;
    int flips = 0, last = 0;
    for (double t : grid) {
      const double g = mixture_rates(p, t)[2];
      const int s = g > 0.0 ? 1 : (g < 0.0 ? -1 : 0);
      if (s != 0 && last != 0 && s != last) ++flips;
      if (s != 0) last = s;
    }
    flips_bad += flips > 1;
  }
  return {beta_bad == 0 && alpha_bad == 0 && flips_bad == 0,
          "beta " + std::to_string(beta_bad) + ", alpha " + std::to_string(alpha_bad) +
              ", gamma_3 " + std::to_string(flips_bad) + " offending cases"};
}

Outcome region_chain() {
  const MixtureWeights pt(0.4, 0.4, 0.2);
  const DiagramGrid g = diagram(DiagramMode::kQPlane, 128, {pt, kInfiniteTime});
  const RateModel m1 = RateModel::mixture(pt);
  const auto grid = default_grid();
  int inside = 0, disagree = 0;
  for (const DiagramCell& c : g.cells) {
    if (c.label != RegionLabel::kP2Tensor) continue;
    ++inside;
    const RateModel m2 = RateModel::mixture(MixtureWeights(c.x, c.y, 1.0 - c.x - c.y));
    const auto v = tensor_p_divisible(m1, m2, grid);
    disagree += v.label == DivisibilityLabel::kNotPDivisible ||
                v.label == DivisibilityLabel::kUndetermined;
  }
  return {inside > 0 && disagree == 0,
          std::to_string(inside) + " cells inside, " + std::to_string(disagree) + " disagreements"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"1 ENM closed form", enm_closed_form},
      {"2 generator reconstruction", generator_reconstruction},
      {"3 bisector threshold", bisector_root},
      {"4 bisector q-interval collapse", fig2_collapse},
      {"5 sinusoid CP phase", example1_phase},
      {"6 opposite-sinusoid product", opposite_sinusoids},
      {"7 self-product equivalence", self_product_equivalence},
      {"8 no single-map revival", no_single_map_bfi},
      {"9 SBFI demonstration", sbfi_demonstration},
      {"10 numerator sign structure", sign_structure},
      {"11 region implication chain", region_chain},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s  criterion %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", name,
                o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
