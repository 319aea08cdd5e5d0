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

#include "qdivide/diagram.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qdivide/error.hpp"
#include "qdivide/parallel.hpp"

namespace qdivide {

namespace {

double min_margin(const RegionTest& r) {
  return *std::min_element(r.margins.begin(), r.margins.end());
}

RegionLabel banded(double margin, RegionLabel inside, RegionLabel outside) {
  if (std::abs(margin) < kBoundaryBand) return RegionLabel::kBoundary;
  return margin > 0.0 ? inside : outside;
}

// Centroids of the resolution^2 sub-triangles of {x, y >= 0, x + y <= 1}.
std::vector<std::pair<double, double>> simplex_centroids(int n) {
  std::vector<std::pair<double, double>> out;
  out.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; i + j < n; ++j) {
      out.emplace_back((i + 1.0 / 3.0) / n, (j + 1.0 / 3.0) / n);
      if (i + j < n - 1) out.emplace_back((i + 2.0 / 3.0) / n, (j + 2.0 / 3.0) / n);
    }
  }
  return out;
}

MixtureWeights simplex_point(double x, double y) {
  // Rounding can push 1 - x - y a few ulps below zero near the hypotenuse.
  return MixtureWeights(x, y, std::max(0.0, 1.0 - x - y));
}

}  // namespace

std::string_view to_string(DiagramMode mode) {
  switch (mode) {
    case DiagramMode::kSimplex:
      return "fig1";
    case DiagramMode::kBisector:
      return "fig2";
    case DiagramMode::kQPlane:
      return "fig3";
  }
  return "fig1";
}

std::string_view to_string(RegionLabel label) {
  switch (label) {
    case RegionLabel::kCp:
      return "CP";
    case RegionLabel::kPOnly:
      return "P_ONLY";
    case RegionLabel::kN2:
      return "N2";
    case RegionLabel::kP2Tensor:
      return "P2_TENSOR";
    case RegionLabel::kBoundary:
      return "BOUNDARY";
  }
  return "BOUNDARY";
}

DiagramMode parse_diagram_mode(std::string_view text) {
  for (auto m : {DiagramMode::kSimplex, DiagramMode::kBisector, DiagramMode::kQPlane}) {
    if (to_string(m) == text) return m;
  }
  throw InvalidInput("unknown diagram mode '" + std::string(text) + "' (fig1, fig2, fig3)");
}

RegionLabel parse_region_label(std::string_view text) {
  for (auto l : {RegionLabel::kCp, RegionLabel::kPOnly, RegionLabel::kN2, RegionLabel::kP2Tensor,
                 RegionLabel::kBoundary}) {
    if (to_string(l) == text) return l;
  }
  throw InvalidInput("unknown region label '" + std::string(text) + "'");
}

DiagramGrid diagram(DiagramMode mode, int resolution, const DiagramParams& params) {
  if (resolution < 2) throw InvalidInput("diagram resolution must be at least 2");
  DiagramGrid grid{mode, resolution, params, {}};
  const std::size_t n = static_cast<std::size_t>(resolution) * resolution;
  grid.cells.resize(n);

  switch (mode) {
    case DiagramMode::kSimplex: {
      const auto pts = simplex_centroids(resolution);
      parallel_for(n, [&](std::size_t i) {
        const auto [x, y] = pts[i];
        const double m = min_margin(cp_region_test(simplex_point(x, y)));
        grid.cells[i] = {x, y, banded(m, RegionLabel::kCp, RegionLabel::kPOnly), m};
      });
      break;
    }
    case DiagramMode::kBisector: {
      const double ps = bisector_threshold();
      const double dp = (0.5 - ps) / resolution;
      const double dq = ps / resolution;
      parallel_for(n, [&](std::size_t idx) {
        const double p = ps + (static_cast<double>(idx / resolution) + 0.5) * dp;
        const double q = (static_cast<double>(idx % resolution) + 0.5) * dq;
        const double m = min_margin(bisector_tensor_test(p, q));
        grid.cells[idx] = {p, q, banded(m, RegionLabel::kP2Tensor, RegionLabel::kN2), m};
      });
      break;
    }
    case DiagramMode::kQPlane: {
      if (!params.p) throw InvalidInput("q-plane diagram needs fixed weights p");
      if (cp_region_test(*params.p).inside) {
        throw PreconditionError("q-plane diagram needs p outside CP, got " +
                                params.p->to_string());
      }
      if (!(params.t >= 0.0)) throw InvalidInput("q-plane diagram time must be nonnegative");
      const auto pts = simplex_centroids(resolution);
      parallel_for(n, [&](std::size_t i) {
        const auto [x, y] = pts[i];
        const MixtureWeights q = simplex_point(x, y);
        const double cp = min_margin(cp_region_test(q));
        if (cp < 0.0 && std::abs(cp) >= kBoundaryBand) {
          grid.cells[i] = {x, y, RegionLabel::kPOnly, cp};
          return;
        }
        const double m = min_margin(tensor_region_test(*params.p, q, params.t));
        RegionLabel label = banded(m, RegionLabel::kP2Tensor, RegionLabel::kN2);
        if (std::abs(cp) < kBoundaryBand) label = RegionLabel::kBoundary;
        grid.cells[i] = {x, y, label, m};
      });
      break;
    }
  }
  return grid;
}

double label_fraction(const DiagramGrid& grid, RegionLabel label) {
  if (grid.cells.empty()) return 0.0;
  const auto count = std::count_if(grid.cells.begin(), grid.cells.end(),
                                   [&](const DiagramCell& c) { return c.label == label; });
  return static_cast<double>(count) / static_cast<double>(grid.cells.size());
}

}  // namespace qdivide
