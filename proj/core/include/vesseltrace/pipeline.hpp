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

#include "vesseltrace/search.hpp"

namespace vtrace {

struct PreparedField {
  CostField field;
  std::optional<EdgeMap> edges;  // present for the edge-based indicators
};

/// Builds the configured indicator's cost field for `img` (running the
/// Canny detector when the indicator needs an edge map) and attaches the
/// boundary penalty zone from the geometry.
PreparedField prepare_cost_field(const GrayImage& img, const VesselGeometry& geom,
                                 const ScanConfig& cfg);

struct TraceOptions {
  bool useSimpleScan = false;  // exercise the reference per-pair scan
  int threads = 0;             // 0 = hardware concurrency
};

/// The whole tracing pipeline: cost field, endpoint scan, phase selection.
ScanResult trace_boundaries(const GrayImage& img, const VesselGeometry& geom,
                            const ScanConfig& cfg, const TraceOptions& opt = {});

}  // namespace vtrace
