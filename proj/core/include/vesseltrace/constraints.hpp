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

#include <vector>

#include "vesseltrace/config.hpp"
#include "vesseltrace/vessel.hpp"

namespace vtrace {

/// A candidate (start, end) pair of contour points for a boundary curve.
/// S is always the left endpoint.
struct EndpointPair {
  Pixel s;
  Pixel e;
  int sIndex = 0;  // position of S in the contour order
  int eIndex = 0;
  int dx = 0;           // e.x - s.x, always >= 1
  double lineAngleDeg = 0.0;  // atan(|e.y - s.y| / dx)
};

/// Point-level legality tests shared by region construction, the scans,
/// and path verification. All thresholds are resolved once per
/// (geometry, config) pair; the per-pixel tests are branch-and-multiply
/// only, no trigonometry.
class PathConstraints {
 public:
  PathConstraints(const VesselGeometry& geom, const ScanConfig& cfg);

  /// Excluded-band test (assumes nothing about interior membership).
  bool in_excluded_band(int x, int y) const {
    return double(y - geom_->yMin) < topDepth_ ||
           double(geom_->yMax - y) < bottomDepth_;
  }

  /// Full pair-region test: containment, bands, both cones, flat-path.
  /// S and E themselves are always legal.
  bool pair_legal(const Pixel& s, const Pixel& e, int x, int y) const;

  /// Relaxed single-endpoint test: the E-dependent cone and flat-path
  /// terms are dropped.
  bool source_legal(const Pixel& s, int x, int y) const;

  /// The sweep variant used by the fast scan: like source_legal, but the
  /// flat-path threshold is additionally capped by dxToSink/4, the
  /// distance to the nearest candidate endpoint column at or right of x.
  /// This keeps the sweep region a superset of every admissible pair
  /// region, which the fast scan's pruning relies on.
  bool sweep_legal(const Pixel& s, int x, int y, int dxToSink) const;

  double flat_d() const { return flatD_; }
  const VesselGeometry& geometry() const { return *geom_; }

 private:
  const VesselGeometry* geom_;
  double tanPhi_;
  double flatD_;
  double topDepth_;
  double bottomDepth_;
};

/// All ordered contour-point pairs passing the endpoint filters: horizontal
/// separation of at least minLengthFrac * averageWidth (and at least 1 px),
/// endpoint-line angle at most thetaMaxDeg, and neither endpoint inside an
/// excluded band. Sorted by (sIndex, eIndex).
std::vector<EndpointPair> enumerate_endpoint_pairs(const VesselGeometry& geom,
                                                   const ScanConfig& cfg);

/// Mask of pixels a path from S to E may occupy. Empty outside columns
/// [S.x, E.x]. Throws VesselError if S or E is not on the contour.
RegionMask pair_legal_region(const VesselGeometry& geom, const Pixel& s,
                             const Pixel& e, const ScanConfig& cfg);

/// Mask of pixels any path leaving S rightward may occupy, using only the
/// S-dependent filters. Superset of pair_legal_region for admissible E
/// whenever the excluded bands are at least flatD deep.
RegionMask source_legal_region(const VesselGeometry& geom, const Pixel& s,
                               const ScanConfig& cfg);

}  // namespace vtrace
