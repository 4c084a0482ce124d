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
#include <stdexcept>
#include <vector>

#include "vesseltrace/pixel.hpp"

namespace vtrace {

/// Binary pixel mask. Depending on the producing operation a set bit means
/// "path may occupy this pixel" (legal regions), "pixel is inside the
/// penalty zone", or "pixel is excluded".
struct RegionMask {
  int width = 0;
  int height = 0;
  std::vector<uint8_t> data;

  RegionMask() = default;
  RegionMask(int w, int h, uint8_t fill = 0)
      : width(w), height(h), data(size_t(w) * h, fill) {}

  uint8_t at(int x, int y) const { return data[size_t(y) * width + x]; }
  uint8_t& at(int x, int y) { return data[size_t(y) * width + x]; }
  bool test(int x, int y) const {
    return x >= 0 && x < width && y >= 0 && y < height && at(x, y) != 0;
  }
  size_t count() const;
};

/// Invalid vessel input (empty mask, several components, open loop, ...).
class VesselError : public std::runtime_error {
 public:
  explicit VesselError(const std::string& what) : std::runtime_error(what) {}
};

/// Vessel silhouette with everything the path filters need precomputed:
/// the ordered contour, interior mask, per-column vertical bounds, mean
/// width, vertical extent, and a Chebyshev distance-to-contour field.
struct VesselGeometry {
  int width = 0;
  int height = 0;
  std::vector<Pixel> contour;      // ordered closed outline, one entry per pixel
  RegionMask interior;             // 1 = inside vessel (contour included)
  std::vector<int> yTop;           // per column; -1 when column has no interior
  std::vector<int> yBottom;
  double averageWidth = 0.0;       // mean horizontal run length of interior rows
  int verticalExtent = 0;          // height of the interior bounding box
  int yMin = 0, yMax = 0;          // interior row range
  int xMin = 0, xMax = 0;          // interior column range
  std::vector<int> distToBoundary; // Chebyshev distance to nearest contour pixel

  int dist(int x, int y) const { return distToBoundary[size_t(y) * width + x]; }
  bool inside(int x, int y) const { return interior.test(x, y); }
  bool on_contour(const Pixel& p) const;
};

/// Builds the geometry from a binary interior mask. The foreground must be
/// a single 4-connected, hole-free component of area >= 9 that does not
/// touch the image border. The contour is the foreground pixels 8-adjacent
/// to background, ordered by Moore boundary tracing.
VesselGeometry from_interior_mask(const RegionMask& mask);

/// Builds the geometry from an ordered, closed, 8-connected contour loop.
/// The loop is rasterized, its interior filled, and the result handed to
/// from_interior_mask (so the stored contour is the re-traced one).
VesselGeometry from_contour_points(const std::vector<Pixel>& points, int width,
                                   int height);

/// Interior pixels within `radius` (Chebyshev) of the contour; the zone in
/// which path costs are multiplied.
RegionMask penalty_zone(const VesselGeometry& geom, double radius);

/// Interior pixels within topFrac*verticalExtent of the top interior row or
/// bottomFrac*verticalExtent of the bottom interior row. Set bits mark
/// excluded pixels. Requires fractions in [0,1) with topFrac+bottomFrac < 1.
RegionMask excluded_band(const VesselGeometry& geom, double topFrac,
                         double bottomFrac);

}  // namespace vtrace
