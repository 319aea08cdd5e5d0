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

#include <optional>
#include <string_view>
#include <vector>

#include "qdivide/mixtures.hpp"
#include "qdivide/rate_model.hpp"

namespace qdivide {

/// kSimplex: (p1, p2) over the one-qubit simplex.
/// kBisector: (p, q) over (p*, 1/2] x [0, p*] for bisector weights.
/// kQPlane: (q1, q2) over the simplex for a fixed p outside CP.
enum class DiagramMode { kSimplex, kBisector, kQPlane };

enum class RegionLabel { kCp, kPOnly, kN2, kP2Tensor, kBoundary };

std::string_view to_string(DiagramMode mode);
std::string_view to_string(RegionLabel label);
DiagramMode parse_diagram_mode(std::string_view text);
RegionLabel parse_region_label(std::string_view text);

/// Cells with |margin| below this are labeled BOUNDARY.
inline constexpr double kBoundaryBand = 1e-9;

struct DiagramParams {
  /// Fixed weights for kQPlane.
  std::optional<MixtureWeights> p;
  /// Evaluation time for kQPlane; kInfiniteTime selects the asymptotic test.
  double t = kInfiniteTime;
};

struct DiagramCell {
  double x = 0.0;
  double y = 0.0;
  RegionLabel label = RegionLabel::kBoundary;
  double margin = 0.0;
};

struct DiagramGrid {
  DiagramMode mode = DiagramMode::kSimplex;
  int resolution = 0;
  DiagramParams params;
  std::vector<DiagramCell> cells;
};

/// Labels resolution^2 cells. Simplex-based modes split the triangle into
/// resolution^2 congruent sub-triangles and evaluate at their centroids; the
/// bisector mode uses the centers of a resolution x resolution rectangle
/// grid. In kQPlane mode q outside CP is labeled P_ONLY (outside the region's
/// domain), q in CP is P2_TENSOR or N2.
DiagramGrid diagram(DiagramMode mode, int resolution, const DiagramParams& params = {});

/// Fraction of cells carrying `label`.
double label_fraction(const DiagramGrid& grid, RegionLabel label);

}  // namespace qdivide
