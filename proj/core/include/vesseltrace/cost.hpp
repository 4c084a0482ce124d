/* Copyright 2026 The VesselTrace Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include "vesseltrace/config.hpp"
#include "vesseltrace/edges.hpp"
#include "vesseltrace/image.hpp"
#include "vesseltrace/vessel.hpp"

namespace vtrace {

enum class MoveKind { Horizontal, Diagonal, Vertical };

/// Per-pixel path cost derived from one boundary indicator, plus the
/// penalty-zone mask and the move multipliers it is scanned with.
/// Costs are nonnegative by construction.
struct CostField {
  int width = 0;
  int height = 0;
  std::vector<double> perPixelCost;
  RegionMask penaltyMask;  // empty mask = no penalty zone attached
  Indicator indicator = Indicator::Intensity;
  double penaltyFactor = 3.0;
  double verticalPenalty = 1.2;

  double cost(int x, int y) const { return perPixelCost[size_t(y) * width + x]; }

  /// Pixel cost with the penalty-zone multiplier applied.
  double cell_cost(int x, int y) const {
    double c = cost(x, y);
    return penaltyMask.test(x, y) ? c * penaltyFactor : c;
  }
};

/// Cost(P) = C - |I(x, y-d) - I(x, y+d)|, the perpendicular intensity
/// change approximated vertically, clamped at zero.
CostField intensity_cost_field(const GrayImage& img, const ScanConfig& cfg);

/// Cost(P) = C - min(1, dI / max(I(P), 0.05)), clamped at zero.
CostField relative_intensity_cost_field(const GrayImage& img, const ScanConfig& cfg);

/// Cost(P) = C - Edge(P), clamped at zero.
CostField edge_cost_field(const EdgeMap& edges, const ScanConfig& cfg);

/// Cost(P) = C - (Edge(P) - density(P)) where density(P) averages the edge
/// map over two strips above and below P; negatives clamp to zero, values
/// up to C+1 are kept.
CostField edge_density_cost_field(const EdgeMap& edges, const ScanConfig& cfg);

/// Classifies a single path move; throws std::invalid_argument when `to`
/// is not reachable from `from` under the legal move set.
MoveKind classify_move(const Pixel& from, const Pixel& to);

/// Cost of entering `to`: cell cost times the vertical-move multiplier
/// when the move is vertical.
double move_cost(const CostField& field, const Pixel& from, const Pixel& to,
                 MoveKind kind);
double move_cost(const CostField& field, const Pixel& from, const Pixel& to);

/// The one-time contribution of a path's start pixel.
double entry_cost(const CostField& field, const Pixel& p);

}  // namespace vtrace
