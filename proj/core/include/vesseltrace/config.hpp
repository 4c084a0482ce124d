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

#include <string>

#include "vesseltrace/vessel.hpp"

namespace vtrace {

/// Which per-pixel property scores boundary evidence.
enum class Indicator {
  Intensity,          // absolute intensity change across the curve
  RelativeIntensity,  // intensity change divided by local intensity
  Edge,               // overlap with a binary edge map
  EdgeDensity,        // edge overlap minus surrounding edge density
};

Indicator parse_indicator(const std::string& name);
std::string indicator_name(Indicator ind);

/// Every knob of the tracing pipeline. Fields with a negative default are
/// resolved against the vessel geometry (see the resolved_* helpers).
struct ScanConfig {
  // Endpoint-pair filters.
  double thetaMaxDeg = 55.0;    // endpoint-line angle limit
  double minLengthFrac = 0.25;  // of the vessel's average width

  // Legal-region filters.
  double phiMaxDeg = 70.0;  // point-to-endpoint cone limit
  double topFrac = 0.10;    // excluded band at the vessel top
  double bottomFrac = 0.05; // excluded band at the vessel bottom
  double flatD = -1.0;      // flat-path minimal distance; <0: max(3, 2% of extent)

  // Move rules.
  int vMax = 3;                  // max consecutive vertical moves
  double verticalPenalty = 1.2;  // multiplier on vertical-move cost
  double penaltyFactor = 3.0;    // multiplier inside the boundary penalty zone
  double penaltyRadius = -1.0;   // <0: max(2, 2% of average width)

  // Cost function.
  Indicator indicator = Indicator::EdgeDensity;
  double costC = 1.0;        // the constant C
  int normalOffset = 2;      // d, half-gap of the vertical intensity probe
  int densityStripWidth = 5; // edge-density window geometry
  int densityStripHeight = 3;
  int densityOffset = 3;     // vertical offset of the two strips

  // Edge detection.
  double cannySigma = 1.4;
  double cannyLow = 0.1;   // fraction of the max gradient magnitude
  double cannyHigh = 0.3;

  // Multi-phase selection and grading.
  double phaseThresholdK = 1.1;
  double suppressionDist = -1.0;  // <0: max(5, 3% of extent)
  double tau = 2.0;               // grading tolerance in pixels

  /// Throws std::invalid_argument when any field is out of its domain.
  void validate() const;
};

double resolved_flat_d(const ScanConfig& cfg, const VesselGeometry& geom);
double resolved_penalty_radius(const ScanConfig& cfg, const VesselGeometry& geom);
double resolved_suppression_dist(const ScanConfig& cfg, const VesselGeometry& geom);

}  // namespace vtrace
