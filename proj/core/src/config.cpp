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

#include "vesseltrace/config.hpp"

#include <algorithm>
#include <stdexcept>

namespace vtrace {

Indicator parse_indicator(const std::string& name) {
  if (name == "intensity") return Indicator::Intensity;
  if (name == "relative-intensity") return Indicator::RelativeIntensity;
  if (name == "edge") return Indicator::Edge;
  if (name == "edge-density") return Indicator::EdgeDensity;
  throw std::invalid_argument("unknown indicator: " + name);
}

std::string indicator_name(Indicator ind) {
  switch (ind) {
    case Indicator::Intensity: return "intensity";
    case Indicator::RelativeIntensity: return "relative-intensity";
    case Indicator::Edge: return "edge";
    case Indicator::EdgeDensity: return "edge-density";
  }
  return "?";
}

void ScanConfig::validate() const {
  auto fail = [](const char* what) { throw std::invalid_argument(what); };
  if (!(thetaMaxDeg > 0.0 && thetaMaxDeg <= 90.0)) fail("thetaMaxDeg must be in (0,90]");
  if (!(phiMaxDeg > 0.0 && phiMaxDeg <= 90.0)) fail("phiMaxDeg must be in (0,90]");
  if (!(minLengthFrac >= 0.0 && minLengthFrac < 1.0)) fail("minLengthFrac must be in [0,1)");
  if (!(topFrac >= 0.0 && topFrac < 1.0)) fail("topFrac must be in [0,1)");
  if (!(bottomFrac >= 0.0 && bottomFrac < 1.0)) fail("bottomFrac must be in [0,1)");
  if (topFrac + bottomFrac >= 1.0) fail("topFrac + bottomFrac must be < 1");
  if (vMax < 0) fail("vMax must be >= 0");
  if (verticalPenalty < 1.0) fail("verticalPenalty must be >= 1");
  if (penaltyFactor < 1.0) fail("penaltyFactor must be >= 1");
  if (costC <= 0.0) fail("costC must be > 0");
  if (normalOffset < 1) fail("normalOffset must be >= 1");
  if (densityStripWidth < 1 || densityStripHeight < 1 || densityOffset < 0)
    fail("density window malformed");
  if (cannySigma <= 0.0) fail("cannySigma must be > 0");
  if (cannyLow < 0.0 || cannyLow >= cannyHigh) fail("canny thresholds need 0 <= low < high");
  if (phaseThresholdK < 1.0) fail("phaseThresholdK must be >= 1");
  if (tau < 0.0) fail("tau must be >= 0");
}

double resolved_flat_d(const ScanConfig& cfg, const VesselGeometry& geom) {
  if (cfg.flatD >= 0.0) return cfg.flatD;
  return std::max(3.0, 0.02 * geom.verticalExtent);
}

double resolved_penalty_radius(const ScanConfig& cfg, const VesselGeometry& geom) {
  if (cfg.penaltyRadius >= 0.0) return cfg.penaltyRadius;
  return std::max(2.0, 0.02 * geom.averageWidth);
}

double resolved_suppression_dist(const ScanConfig& cfg, const VesselGeometry& geom) {
  if (cfg.suppressionDist >= 0.0) return cfg.suppressionDist;
  return std::max(5.0, 0.03 * geom.verticalExtent);
}

}  // namespace vtrace
