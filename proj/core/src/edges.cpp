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

#include "vesseltrace/edges.hpp"

#include <cmath>
#include <deque>
#include <numbers>
#include <stdexcept>

namespace vtrace {

GrayImage EdgeMap::to_gray() const {
  GrayImage g(width, height);
  for (size_t i = 0; i < data.size(); ++i) g.data[i] = data[i] ? 1.0 : 0.0;
  return g;
}

GrayImage gaussian_blur(const GrayImage& img, double sigma) {
  if (sigma <= 0.0) throw std::invalid_argument("gaussian_blur: sigma must be > 0");

  int radius = int(std::ceil(3.0 * sigma));
  std::vector<double> kernel(size_t(radius) * 2 + 1);
  double sum = 0.0;
  for (int k = -radius; k <= radius; ++k) {
    double w = std::exp(-0.5 * (double(k) * k) / (sigma * sigma));
    kernel[size_t(k + radius)] = w;
    sum += w;
  }
  for (double& w : kernel) w /= sum;

  GrayImage tmp(img.width, img.height);
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x) {
      double acc = 0.0;
      for (int k = -radius; k <= radius; ++k)
        acc += kernel[size_t(k + radius)] * img.at_clamped(x + k, y);
      tmp.at(x, y) = acc;
    }
  GrayImage out(img.width, img.height);
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x) {
      double acc = 0.0;
      for (int k = -radius; k <= radius; ++k)
        acc += kernel[size_t(k + radius)] * tmp.at_clamped(x, y + k);
      out.at(x, y) = acc;
    }
  return out;
}

GradientField gradient(const GrayImage& img) {
  if (img.width < 3 || img.height < 3)
    throw std::invalid_argument("gradient: image must be at least 3x3");

  GradientField g;
  g.width = img.width;
  g.height = img.height;
  g.magnitude.resize(img.data.size());
  g.direction.resize(img.data.size());

  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x) {
      double tl = img.at_clamped(x - 1, y - 1), tc = img.at_clamped(x, y - 1),
             tr = img.at_clamped(x + 1, y - 1);
      double ml = img.at_clamped(x - 1, y), mr = img.at_clamped(x + 1, y);
      double bl = img.at_clamped(x - 1, y + 1), bc = img.at_clamped(x, y + 1),
             br = img.at_clamped(x + 1, y + 1);
      double gx = (tr + 2.0 * mr + br) - (tl + 2.0 * ml + bl);
      double gy = (bl + 2.0 * bc + br) - (tl + 2.0 * tc + tr);
      size_t i = size_t(y) * img.width + x;
      g.magnitude[i] = std::sqrt(gx * gx + gy * gy);
      g.direction[i] = std::atan2(gy, gx);
    }
  return g;
}

namespace {

// Quantizes a direction into one of 4 NMS bins: 0 = horizontal gradient
// (compare left/right), 1 = 45deg, 2 = vertical, 3 = 135deg.
int direction_bin(double rad) {
  constexpr double pi = std::numbers::pi;
  double deg = rad * 180.0 / pi;
  if (deg < 0.0) deg += 180.0;
  if (deg >= 180.0) deg -= 180.0;
  if (deg < 22.5 || deg >= 157.5) return 0;
  if (deg < 67.5) return 1;
  if (deg < 112.5) return 2;
  return 3;
}

}  // namespace

EdgeMap canny(const GrayImage& img, double low, double high, double sigma) {
  if (low < 0.0 || high < 0.0) throw std::invalid_argument("canny: negative threshold");
  if (low >= high) throw std::invalid_argument("canny: low must be < high");

  GrayImage blurred = gaussian_blur(img, sigma);
  GradientField g = gradient(blurred);

  double maxMag = 0.0;
  for (double m : g.magnitude) maxMag = std::max(maxMag, m);

  EdgeMap edges(img.width, img.height);
  if (maxMag <= 0.0) return edges;

  const double lowT = low * maxMag;
  const double highT = high * maxMag;

  // Offsets along the gradient direction for each bin.
  constexpr int dx[4] = {1, 1, 0, -1};
  constexpr int dy[4] = {0, 1, 1, 1};

  // NMS with plateau tie-break: keep a pixel when it is >= the neighbor on
  // one side and strictly > on the other, so a two-pixel plateau yields a
  // single-pixel line.
  std::vector<uint8_t> strong(img.data.size(), 0);
  std::vector<uint8_t> weak(img.data.size(), 0);
  auto magAt = [&](int x, int y) {
    x = std::clamp(x, 0, img.width - 1);
    y = std::clamp(y, 0, img.height - 1);
    return g.magnitude[size_t(y) * img.width + x];
  };
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x) {
      size_t i = size_t(y) * img.width + x;
      double m = g.magnitude[i];
      if (m < lowT) continue;
      int b = direction_bin(g.direction[i]);
      double fore = magAt(x + dx[b], y + dy[b]);
      double back = magAt(x - dx[b], y - dy[b]);
      if (!(m > fore && m >= back)) continue;
      if (m >= highT)
        strong[i] = 1;
      else
        weak[i] = 1;
    }

  // Hysteresis: BFS from strong pixels across 8-connected weak pixels.
  std::deque<Pixel> frontier;
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x)
      if (strong[size_t(y) * img.width + x]) {
        edges.at(x, y) = 1;
        frontier.push_back({x, y});
      }
  while (!frontier.empty()) {
    Pixel p = frontier.front();
    frontier.pop_front();
    for (int oy = -1; oy <= 1; ++oy)
      for (int ox = -1; ox <= 1; ++ox) {
        if (ox == 0 && oy == 0) continue;
        int nx = p.x + ox, ny = p.y + oy;
        if (nx < 0 || nx >= img.width || ny < 0 || ny >= img.height) continue;
        size_t i = size_t(ny) * img.width + nx;
        if (weak[i] && !edges.data[i]) {
          edges.data[i] = 1;
          frontier.push_back({nx, ny});
        }
      }
  }
  return edges;
}

}  // namespace vtrace
