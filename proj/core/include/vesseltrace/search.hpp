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

#include <optional>
#include <vector>

#include "vesseltrace/constraints.hpp"
#include "vesseltrace/cost.hpp"

namespace vtrace {

/// An x-monotone pixel curve between two contour points. Consecutive
/// points differ by one legal move: (+1,-1), (+1,0), (+1,+1), (0,+1) or
/// (0,-1), with at most vMax consecutive vertical moves, all sharing one
/// direction within a run.
struct BoundaryPath {
  std::vector<Pixel> points;   // ordered from S to E
  double rawCost = 0.0;        // sum of (multiplied) pixel costs, S included once
  double normalizedCost = 0.0; // rawCost / (E.x - S.x)
};

/// Everything one scan produces. `phases` is sorted by normalizedCost and
/// bestPath equals phases.front() when any path was found.
struct ScanResult {
  std::optional<BoundaryPath> bestPath;
  std::vector<BoundaryPath> phases;
  size_t pairsEvaluated = 0;
  size_t pairsRecomputed = 0;  // fast scan only
};

/// One Dijkstra sweep from a start point: minimal path costs to every
/// reachable pixel plus the predecessor chains to rebuild one optimal path.
class SingleSourceResult {
 public:
  double cost_at(const Pixel& p) const;      // +inf when unreachable
  std::vector<Pixel> path_to(const Pixel& p) const;  // empty when unreachable
  const Pixel& source() const { return source_; }

 private:
  friend class DijkstraRunner;
  Pixel source_{};
  int x0_ = 0, y0_ = 0, nx_ = 0, ny_ = 0;
  int codes_ = 1;
  std::vector<double> dist_;
  std::vector<int32_t> pred_;
};

/// Minimal-rawCost path from S to E across the augmented state graph
/// (pixel, vertical-run length, run direction). Returns nothing when E is
/// unreachable (including E outside the region). Throws
/// std::invalid_argument when S is not inside `region`. Ties are broken
/// deterministically by (cost, x, y, run state).
std::optional<BoundaryPath> best_path_pair(const CostField& field,
                                           const RegionMask& region,
                                           const Pixel& s, const Pixel& e,
                                           const ScanConfig& cfg);

/// Full Dijkstra sweep from S over `region`. Pixels in `sinks` (when
/// given) may terminate paths but not be passed through; the scans use
/// this for candidate endpoints, which are only legal as path ends.
SingleSourceResult single_source(const CostField& field, const RegionMask& region,
                                 const Pixel& s, const ScanConfig& cfg,
                                 const RegionMask* sinks = nullptr);

/// Reference scan: one constrained Dijkstra per endpoint pair.
ScanResult scan_simple(const VesselGeometry& geom, const CostField& field,
                       const ScanConfig& cfg, int threads = 0);

/// Fast scan: one relaxed sweep per start point, then deterministic
/// verification of candidate paths against the exact pair region, with
/// selective recomputation when a sweep path leaves it. Produces the same
/// best normalized cost as scan_simple.
ScanResult scan_fast(const VesselGeometry& geom, const CostField& field,
                     const ScanConfig& cfg, int threads = 0);

/// Greedy multi-phase selection over candidates sorted by normalizedCost:
/// accept everything within thresholdK of the best, suppressing candidates
/// whose mean vertical distance to an accepted path (over shared columns)
/// is below suppressionDist.
std::vector<BoundaryPath> select_phases(const std::vector<BoundaryPath>& sorted,
                                        double thresholdK, double suppressionDist);

/// Mean per-column vertical distance between two paths over their shared
/// columns; empty when the column ranges do not overlap.
std::optional<double> mean_vertical_distance(const BoundaryPath& a,
                                             const BoundaryPath& b);

}  // namespace vtrace
