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

#include <cstdint>
#include <string>

#include "vesseltrace/search.hpp"

namespace vtrace {

enum class Silhouette { Rectangle, Trapezoid, Flask };
enum class BoundaryShape { Flat, Slanted, Sine, StepBump };

Silhouette parse_silhouette(const std::string& name);
std::string silhouette_name(Silhouette s);
BoundaryShape parse_boundary_shape(const std::string& name);
std::string boundary_shape_name(BoundaryShape s);

/// Parameters of one synthetic test image. The generated image is a dark
/// background, a 2 px bright vessel wall, and a material region below the
/// ground-truth boundary at background+contrast intensity, with optional
/// Gaussian noise and speckle texture. Deterministic given the seed.
struct SyntheticSpec {
  int width = 96;
  int height = 96;
  Silhouette silhouette = Silhouette::Rectangle;
  BoundaryShape boundary = BoundaryShape::Flat;

  double levelFrac = 0.5;    // boundary depth within the interior height
  double slantDeg = 0.0;     // Slanted: endpoint line angle, <= 45
  double sineAmplitude = 4.0;  // Sine: pixels
  double sinePeriod = 48.0;    // Sine: pixels
  double stepHeight = 6.0;     // StepBump: pixels, downward
  double stepPosFrac = 0.5;    // StepBump: where the step sits

  double contrast = 0.8;       // intensity gap across the boundary
  double noiseSigma = 0.0;     // additive Gaussian, intensity units
  double speckleDensity = 0.0; // fraction of pixels given random texture
  uint32_t seed = 1;

  // Silhouette geometry.
  double marginFrac = 0.14;        // image margin around the vessel
  double trapezoidTopFrac = 0.70;  // top width relative to bottom width
  double flaskNeckFrac = 0.40;     // neck width relative to body width
  double flaskNeckHeightFrac = 0.30;
};

struct SyntheticCase {
  GrayImage image;
  RegionMask interior;
  BoundaryPath groundTruth;  // costs are zero; only the points matter
};

/// Generates one image/mask/ground-truth triple. The ground truth is
/// validated against the default ScanConfig: legal moves, endpoint filters,
/// and the pair legal region. Throws std::invalid_argument when the
/// requested shape cannot satisfy them.
SyntheticCase generate_synthetic(const SyntheticSpec& spec);

struct TwoPhaseCase {
  GrayImage image;
  RegionMask interior;
  BoundaryPath upperBoundary;  // e.g. liquid-air
  BoundaryPath lowerBoundary;  // e.g. solid-liquid
};

/// A vessel holding two stacked phases: background above upperLevelFrac,
/// an intermediate intensity between the boundaries, and a bright phase
/// below lowerLevelFrac. Both boundaries are flat.
TwoPhaseCase generate_two_phase(const SyntheticSpec& spec, double upperLevelFrac,
                                double lowerLevelFrac);

}  // namespace vtrace
