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

#include "vesseltrace/pipeline.hpp"

#include <stdexcept>

namespace vtrace {

PreparedField prepare_cost_field(const GrayImage& img, const VesselGeometry& geom,
                                 const ScanConfig& cfg) {
  cfg.validate();
  if (img.width != geom.width || img.height != geom.height)
    throw std::invalid_argument("prepare_cost_field: image and geometry dimensions differ");
  if (img.width < 3 || img.height < 3)
    throw std::invalid_argument("prepare_cost_field: image must be at least 3x3");

  PreparedField out;
  switch (cfg.indicator) {
    case Indicator::Intensity:
      out.field = intensity_cost_field(img, cfg);
      break;
    case Indicator::RelativeIntensity:
      out.field = relative_intensity_cost_field(img, cfg);
      break;
    case Indicator::Edge:
      out.edges = canny(img, cfg.cannyLow, cfg.cannyHigh, cfg.cannySigma);
      out.field = edge_cost_field(*out.edges, cfg);
      break;
    case Indicator::EdgeDensity:
      out.edges = canny(img, cfg.cannyLow, cfg.cannyHigh, cfg.cannySigma);
      out.field = edge_density_cost_field(*out.edges, cfg);
      break;
  }
  out.field.penaltyMask = penalty_zone(geom, resolved_penalty_radius(cfg, geom));
  return out;
}

ScanResult trace_boundaries(const GrayImage& img, const VesselGeometry& geom,
                            const ScanConfig& cfg, const TraceOptions& opt) {
  PreparedField prepared = prepare_cost_field(img, geom, cfg);
  return opt.useSimpleScan ? scan_simple(geom, prepared.field, cfg, opt.threads)
                           : scan_fast(geom, prepared.field, cfg, opt.threads);
}

}  // namespace vtrace
