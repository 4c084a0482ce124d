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

#include "vesseltrace/cost.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vtrace {

namespace {

constexpr double kIntensityFloor = 0.05;  // zero guard for the relative indicator

CostField make_field(int w, int h, Indicator ind, const ScanConfig& cfg) {
  CostField f;
  f.width = w;
  f.height = h;
  f.perPixelCost.assign(size_t(w) * h, 0.0);
  f.indicator = ind;
  f.penaltyFactor = cfg.penaltyFactor;
  f.verticalPenalty = cfg.verticalPenalty;
  return f;
}

double vertical_delta(const GrayImage& img, int x, int y, int d) {
  return std::abs(img.at_clamped(x, y - d) - img.at_clamped(x, y + d));
}

}  // namespace

CostField intensity_cost_field(const GrayImage& img, const ScanConfig& cfg) {
  CostField f = make_field(img.width, img.height, Indicator::Intensity, cfg);
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x) {
      double dI = vertical_delta(img, x, y, cfg.normalOffset);
      f.perPixelCost[size_t(y) * img.width + x] = std::max(0.0, cfg.costC - dI);
    }
  return f;
}

CostField relative_intensity_cost_field(const GrayImage& img, const ScanConfig& cfg) {
  CostField f = make_field(img.width, img.height, Indicator::RelativeIntensity, cfg);
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x) {
      double dI = vertical_delta(img, x, y, cfg.normalOffset);
      double ratio = std::min(1.0, dI / std::max(img.at(x, y), kIntensityFloor));
      f.perPixelCost[size_t(y) * img.width + x] = std::max(0.0, cfg.costC - ratio);
    }
  return f;
}

CostField edge_cost_field(const EdgeMap& edges, const ScanConfig& cfg) {
  CostField f = make_field(edges.width, edges.height, Indicator::Edge, cfg);
  for (size_t i = 0; i < edges.data.size(); ++i)
    f.perPixelCost[i] = std::max(0.0, cfg.costC - double(edges.data[i]));
  return f;
}

CostField edge_density_cost_field(const EdgeMap& edges, const ScanConfig& cfg) {
  CostField f = make_field(edges.width, edges.height, Indicator::EdgeDensity, cfg);
  const int hw = cfg.densityStripWidth / 2;
  const int hh = (cfg.densityStripHeight - 1) / 2;
  for (int y = 0; y < edges.height; ++y)
    for (int x = 0; x < edges.width; ++x) {
      int sum = 0, count = 0;
      for (int side = -1; side <= 1; side += 2) {
        int cy = y + side * cfg.densityOffset;
        for (int sy = cy - hh; sy <= cy + hh; ++sy) {
          if (sy < 0 || sy >= edges.height) continue;
          if (std::abs(sy - y) <= 1) continue;  // keep the curve's own band out
          for (int sx = x - hw; sx <= x + hw; ++sx) {
            if (sx < 0 || sx >= edges.width) continue;
            sum += edges.at(sx, sy);
            ++count;
          }
        }
      }
      double density = count > 0 ? double(sum) / double(count) : 0.0;
      double c = cfg.costC - (double(edges.at(x, y)) - density);
      f.perPixelCost[size_t(y) * edges.width + x] = std::max(0.0, c);
    }
  return f;
}

MoveKind classify_move(const Pixel& from, const Pixel& to) {
  int dx = to.x - from.x;
  int dy = to.y - from.y;
  if (dx == 1 && dy == 0) return MoveKind::Horizontal;
  if (dx == 1 && (dy == 1 || dy == -1)) return MoveKind::Diagonal;
  if (dx == 0 && (dy == 1 || dy == -1)) return MoveKind::Vertical;
  throw std::invalid_argument("illegal move: destination not reachable");
}

double move_cost(const CostField& field, const Pixel& /*from*/, const Pixel& to,
                 MoveKind kind) {
  double c = field.cell_cost(to.x, to.y);
  if (kind == MoveKind::Vertical) c *= field.verticalPenalty;
  return c;
}

double move_cost(const CostField& field, const Pixel& from, const Pixel& to) {
  return move_cost(field, from, to, classify_move(from, to));
}

double entry_cost(const CostField& field, const Pixel& p) {
  return field.cell_cost(p.x, p.y);
}

}  // namespace vtrace
