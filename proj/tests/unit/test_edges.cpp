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

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "vesseltrace/edges.hpp"
#include "support/testutil.hpp"

using namespace vtrace;

TEST_CASE("gaussian_blur leaves uniform images unchanged") {
  GrayImage img(12, 9, 0.37);
  GrayImage out = gaussian_blur(img, 1.3);
  for (double v : out.data) CHECK(v == doctest::Approx(0.37).epsilon(1e-9));
  CHECK_THROWS_AS(gaussian_blur(img, 0.0), std::invalid_argument);
}

TEST_CASE("gaussian_blur single bright pixel hits the kernel center weight") {
  // Oracle: evaluate the separable kernel directly.
  const double sigma = 1.0;
  const int radius = int(std::ceil(3.0 * sigma));
  double sum = 0.0;
  for (int k = -radius; k <= radius; ++k) sum += std::exp(-0.5 * k * k / (sigma * sigma));
  const double w0 = 1.0 / sum;  // normalized center weight

  GrayImage img(15, 15, 0.0);
  img.at(7, 7) = 1.0;
  GrayImage out = gaussian_blur(img, sigma);
  CHECK(out.at(7, 7) == doctest::Approx(w0 * w0).epsilon(1e-12));
}

TEST_CASE("gradient on a vertical step") {
  GrayImage img(11, 7, 0.0);
  for (int y = 0; y < 7; ++y)
    for (int x = 6; x < 11; ++x) img.at(x, y) = 1.0;

  GradientField g = gradient(img);
  // Sobel on a unit step: |gx| = 4 on the two columns flanking the step,
  // gy = 0 away from the top/bottom borders.
  for (int y = 1; y < 6; ++y) {
    CHECK(g.mag(5, y) == doctest::Approx(4.0));
    CHECK(g.mag(6, y) == doctest::Approx(4.0));
    CHECK(g.mag(2, y) == doctest::Approx(0.0));
    CHECK(std::abs(std::sin(g.dir(5, y))) == doctest::Approx(0.0).epsilon(1e-12));
  }

  GrayImage uniform(8, 8, 0.5);
  GradientField gu = gradient(uniform);
  for (double m : gu.magnitude) CHECK(m == doctest::Approx(0.0));

  GrayImage tiny(2, 2, 0.0);
  CHECK_THROWS_AS(gradient(tiny), std::invalid_argument);
}

TEST_CASE("gradient direction on a diagonal ramp") {
  GrayImage img(12, 12);
  for (int y = 0; y < 12; ++y)
    for (int x = 0; x < 12; ++x) img.at(x, y) = (x + y) / 22.0;
  GradientField g = gradient(img);
  for (int y = 2; y < 10; ++y)
    for (int x = 2; x < 10; ++x)
      CHECK(g.dir(x, y) == doctest::Approx(std::numbers::pi / 4).epsilon(1e-9));
}

TEST_CASE("canny finds a single-pixel line on a step and nothing on uniform") {
  GrayImage img(40, 24, 0.2);
  for (int y = 0; y < 24; ++y)
    for (int x = 20; x < 40; ++x) img.at(x, y) = 0.8;

  EdgeMap edges = canny(img, 0.1, 0.3, 1.4);
  for (int y = 0; y < 24; ++y) {
    int count = 0, pos = -1;
    for (int x = 0; x < 40; ++x)
      if (edges.at(x, y)) {
        ++count;
        pos = x;
      }
    CHECK(count == 1);               // exactly one pixel per row
    CHECK(std::abs(pos - 19.5) <= 1.0);  // within 1 px of the step
  }

  GrayImage flat(16, 16, 0.42);
  EdgeMap none = canny(flat, 0.1, 0.3, 1.4);
  for (auto v : none.data) CHECK(v == 0);
}

TEST_CASE("canny threshold validation and saturation") {
  GrayImage img(16, 16, 0.2);
  for (int y = 0; y < 16; ++y)
    for (int x = 8; x < 16; ++x) img.at(x, y) = 0.9;

  CHECK_THROWS_AS(canny(img, 0.3, 0.3, 1.4), std::invalid_argument);
  CHECK_THROWS_AS(canny(img, -0.1, 0.3, 1.4), std::invalid_argument);

  // high above the max magnitude: nothing is strong, map is empty
  EdgeMap none = canny(img, 1.2, 1.5, 1.4);
  for (auto v : none.data) CHECK(v == 0);
}

TEST_CASE("NMS thinness: no edge pixel has a same-direction neighbor with larger magnitude") {
  std::mt19937 rng(23);
  GrayImage img(32, 32);
  for (double& v : img.data) v = testutil::uniform01(rng);

  EdgeMap edges = canny(img, 0.1, 0.3, 1.4);
  GradientField g = gradient(gaussian_blur(img, 1.4));
  constexpr int dx[4] = {1, 1, 0, -1};
  constexpr int dy[4] = {0, 1, 1, 1};
  auto bin_of = [](double rad) {
    double deg = rad * 180.0 / std::numbers::pi;
    if (deg < 0) deg += 180.0;
    if (deg >= 180.0) deg -= 180.0;
    if (deg < 22.5 || deg >= 157.5) return 0;
    if (deg < 67.5) return 1;
    if (deg < 112.5) return 2;
    return 3;
  };
  for (int y = 1; y < 31; ++y)
    for (int x = 1; x < 31; ++x) {
      if (!edges.at(x, y)) continue;
      int b = bin_of(g.dir(x, y));
      CHECK(g.mag(x, y) >= g.mag(x + dx[b], y + dy[b]));
      CHECK(g.mag(x, y) >= g.mag(x - dx[b], y - dy[b]));
    }
}

TEST_CASE("hysteresis monotonicity: raising low never adds edge pixels") {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 5; ++trial) {
    GrayImage img(24, 24);
    for (double& v : img.data) v = testutil::uniform01(rng);
    EdgeMap loose = canny(img, 0.05, 0.5, 1.0);
    EdgeMap tight = canny(img, 0.25, 0.5, 1.0);
    for (size_t i = 0; i < loose.data.size(); ++i)
      if (tight.data[i]) CHECK(loose.data[i]);
  }
}

TEST_CASE("edge maps are binary and dimension-preserving") {
  std::mt19937 rng(5);
  GrayImage img(21, 17);
  for (double& v : img.data) v = testutil::uniform01(rng);
  EdgeMap edges = canny(img, 0.1, 0.3, 1.4);
  CHECK(edges.width == img.width);
  CHECK(edges.height == img.height);
  for (auto v : edges.data) CHECK((v == 0 || v == 1));
}
