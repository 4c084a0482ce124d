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

#include <array>
#include <cstdint>
#include <vector>

#include "vesseltrace/pixel.hpp"

namespace vtrace {

/// Grayscale raster with normalized intensities in [0,1], row-major.
/// Immutable by convention once it enters the tracing pipeline.
struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<double> data;

  GrayImage() = default;
  GrayImage(int w, int h, double fill = 0.0)
      : width(w), height(h), data(size_t(w) * size_t(h), fill) {}

  double at(int x, int y) const { return data[size_t(y) * width + x]; }
  double& at(int x, int y) { return data[size_t(y) * width + x]; }

  /// Sample with coordinates clamped to the image rectangle.
  double at_clamped(int x, int y) const;

  bool in_bounds(int x, int y) const {
    return x >= 0 && x < width && y >= 0 && y < height;
  }
  bool empty() const { return width <= 0 || height <= 0; }
};

/// 8-bit RGB raster used for overlay rendering.
struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<uint8_t> data;  // 3 bytes per pixel, row-major

  RgbImage() = default;
  RgbImage(int w, int h) : width(w), height(h), data(size_t(w) * h * 3, 0) {}

  void set(int x, int y, uint8_t r, uint8_t g, uint8_t b) {
    size_t i = (size_t(y) * width + x) * 3;
    data[i] = r;
    data[i + 1] = g;
    data[i + 2] = b;
  }
  std::array<uint8_t, 3> get(int x, int y) const {
    size_t i = (size_t(y) * width + x) * 3;
    return {data[i], data[i + 1], data[i + 2]};
  }
};

/// Block-mean downscaling. Output dims are ceil(dims/factor); trailing
/// partial blocks are averaged over the pixels they actually cover.
/// Throws std::invalid_argument for factor < 1.
GrayImage downscale(const GrayImage& img, int factor);

/// Renders the grayscale image as RGB with the vessel contour and each
/// curve drawn in fixed palette colors. Pixels off the drawn curves are
/// an exact grayscale replication. Throws std::out_of_range if any
/// coordinate lies outside the image.
RgbImage render_overlay(const GrayImage& img,
                        const std::vector<std::vector<Pixel>>& curves,
                        const std::vector<Pixel>& contour);

}  // namespace vtrace
