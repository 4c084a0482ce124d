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
#include <vector>

#include "vesseltrace/image.hpp"

namespace vtrace {

/// Binary edge raster; dimensions always match the source image.
struct EdgeMap {
  int width = 0;
  int height = 0;
  std::vector<uint8_t> data;  // strictly {0,1}

  EdgeMap() = default;
  EdgeMap(int w, int h) : width(w), height(h), data(size_t(w) * h, 0) {}

  uint8_t at(int x, int y) const { return data[size_t(y) * width + x]; }
  uint8_t& at(int x, int y) { return data[size_t(y) * width + x]; }

  /// For debug dumps as 0/255 PGM.
  GrayImage to_gray() const;
};

/// Per-pixel gradient magnitude and direction (radians, atan2 range).
struct GradientField {
  int width = 0;
  int height = 0;
  std::vector<double> magnitude;
  std::vector<double> direction;

  double mag(int x, int y) const { return magnitude[size_t(y) * width + x]; }
  double dir(int x, int y) const { return direction[size_t(y) * width + x]; }
};

/// Separable Gaussian convolution; kernel radius ceil(3*sigma), borders
/// handled by coordinate clamping. Throws for sigma <= 0.
GrayImage gaussian_blur(const GrayImage& img, double sigma);

/// 3x3 Sobel gradient. Requires the image to be at least 3x3; borders are
/// sampled with clamped coordinates so dimensions are preserved.
GradientField gradient(const GrayImage& img);

/// Canny edge detection: blur, Sobel, non-maximum suppression along the
/// gradient direction quantized to 4 bins, then double-threshold
/// hysteresis. `low` and `high` are fractions of the maximum gradient
/// magnitude; a pixel at or above `high` is strong, pixels at or above
/// `low` survive when 8-connected to a strong pixel.
/// Throws for low >= high or negative thresholds.
EdgeMap canny(const GrayImage& img, double low, double high, double sigma);

}  // namespace vtrace
