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

#include "vesseltrace/image.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vtrace {

double GrayImage::at_clamped(int x, int y) const {
  x = std::clamp(x, 0, width - 1);
  y = std::clamp(y, 0, height - 1);
  return data[size_t(y) * width + x];
}

GrayImage downscale(const GrayImage& img, int factor) {
  if (factor < 1) throw std::invalid_argument("downscale: factor must be >= 1");
  if (factor == 1) return img;

  int ow = (img.width + factor - 1) / factor;
  int oh = (img.height + factor - 1) / factor;
  GrayImage out(ow, oh);
  for (int oy = 0; oy < oh; ++oy) {
    int y0 = oy * factor;
    int y1 = std::min(y0 + factor, img.height);
    for (int ox = 0; ox < ow; ++ox) {
      int x0 = ox * factor;
      int x1 = std::min(x0 + factor, img.width);
      double sum = 0.0;
      for (int y = y0; y < y1; ++y)
        for (int x = x0; x < x1; ++x) sum += img.at(x, y);
      out.at(ox, oy) = sum / double((y1 - y0) * (x1 - x0));
    }
  }
  return out;
}

namespace {

uint8_t to_byte(double v) {
  return uint8_t(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
}

// Contour first, then one color per curve, cycling.
constexpr std::array<uint8_t, 3> kContourColor = {40, 110, 255};
constexpr std::array<std::array<uint8_t, 3>, 6> kCurvePalette = {{
    {255, 40, 40},
    {40, 200, 40},
    {255, 220, 0},
    {230, 60, 230},
    {0, 210, 210},
    {255, 140, 0},
}};

}  // namespace

RgbImage render_overlay(const GrayImage& img,
                        const std::vector<std::vector<Pixel>>& curves,
                        const std::vector<Pixel>& contour) {
  RgbImage out(img.width, img.height);
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x) {
      uint8_t g = to_byte(img.at(x, y));
      out.set(x, y, g, g, g);
    }

  auto plot = [&](const Pixel& p, const std::array<uint8_t, 3>& c) {
    if (!img.in_bounds(p.x, p.y))
      throw std::out_of_range("render_overlay: coordinate outside image");
    out.set(p.x, p.y, c[0], c[1], c[2]);
  };

  for (const Pixel& p : contour) plot(p, kContourColor);
  for (size_t i = 0; i < curves.size(); ++i) {
    const auto& color = kCurvePalette[i % kCurvePalette.size()];
    for (const Pixel& p : curves[i]) plot(p, color);
  }
  return out;
}

}  // namespace vtrace
