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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "vesseltrace/image.hpp"
#include "vesseltrace/image_io.hpp"
#include "support/testutil.hpp"

using namespace vtrace;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
  fs::path dir = fs::temp_directory_path() / "vesseltrace_image_tests";
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("load_image scales 8-bit PGM samples by 1/255") {
  fs::path p = temp_dir() / "white.pgm";
  {
    std::ofstream out(p, std::ios::binary);
    out << "P5\n4 3\n255\n";
    for (int i = 0; i < 12; ++i) out.put(char(255));
  }
  GrayImage img = load_image(p.string());
  CHECK(img.width == 4);
  CHECK(img.height == 3);
  for (double v : img.data) CHECK(v == doctest::Approx(1.0));

  {
    std::ofstream out(p, std::ios::binary);
    out << "P5\n2 1\n255\n";
    out.put(char(128));
    out.put(char(0));
  }
  img = load_image(p.string());
  CHECK(img.at(0, 0) == doctest::Approx(128.0 / 255.0));
  CHECK(img.at(1, 0) == doctest::Approx(0.0));
}

TEST_CASE("load_image scales 16-bit PGM by its maxval") {
  fs::path p = temp_dir() / "deep.pgm";
  {
    std::ofstream out(p, std::ios::binary);
    out << "P5\n2 1\n65535\n";
    // big-endian samples: 65535 and 16384
    out.put(char(0xff));
    out.put(char(0xff));
    out.put(char(0x40));
    out.put(char(0x00));
  }
  GrayImage img = load_image(p.string());
  CHECK(img.at(0, 0) == doctest::Approx(1.0));
  CHECK(img.at(1, 0) == doctest::Approx(16384.0 / 65535.0));
}

TEST_CASE("load_image rejects bad inputs") {
  CHECK_THROWS_AS(load_image("/nonexistent/nowhere.pgm"), ImageIoError);

  fs::path trunc = temp_dir() / "trunc.png";
  {
    std::ofstream out(trunc, std::ios::binary);
    out.write("\x89PNG\r\n\x1a\n garbage", 16);
  }
  CHECK_THROWS_AS(load_image(trunc.string()), ImageIoError);

  fs::path bad = temp_dir() / "bad.pgm";
  {
    std::ofstream out(bad, std::ios::binary);
    out << "P5\n0 0\n255\n";
  }
  CHECK_THROWS_AS(load_image(bad.string()), ImageIoError);
}

TEST_CASE("PGM save/load round-trip stays within quantization") {
  std::mt19937 rng(7);
  GrayImage img(13, 9);
  for (double& v : img.data) v = testutil::uniform01(rng);

  fs::path p = temp_dir() / "roundtrip.pgm";
  save_pgm(img, p.string());
  GrayImage back = load_image(p.string());
  REQUIRE(back.width == img.width);
  REQUIRE(back.height == img.height);
  for (size_t i = 0; i < img.data.size(); ++i)
    CHECK(std::abs(back.data[i] - img.data[i]) <= 1.0 / 255.0);

  // A second trip is lossless: the data is already quantized.
  save_pgm(back, p.string());
  GrayImage again = load_image(p.string());
  for (size_t i = 0; i < back.data.size(); ++i)
    CHECK(again.data[i] == doctest::Approx(back.data[i]));
}

TEST_CASE("PNG gray and RGB round-trips") {
  std::mt19937 rng(11);
  GrayImage img(17, 8);
  for (double& v : img.data) v = testutil::uniform01(rng);

  fs::path p = temp_dir() / "roundtrip.png";
  save_png(img, p.string());
  GrayImage back = load_image(p.string());
  REQUIRE(back.width == img.width);
  for (size_t i = 0; i < img.data.size(); ++i)
    CHECK(std::abs(back.data[i] - img.data[i]) <= 1.0 / 255.0);

  // RGB write + luminance read: a gray ramp encoded as RGB must survive.
  RgbImage rgb(16, 4);
  for (int y = 0; y < 4; ++y)
    for (int x = 0; x < 16; ++x) rgb.set(x, y, uint8_t(x * 16), uint8_t(x * 16), uint8_t(x * 16));
  fs::path prgb = temp_dir() / "rgb.png";
  save_png(rgb, prgb.string());
  GrayImage lum = load_image(prgb.string());
  for (int x = 0; x < 16; ++x)
    CHECK(lum.at(x, 0) == doctest::Approx(x * 16 / 255.0).epsilon(0.01));
}

TEST_CASE("downscale block means") {
  GrayImage img(4, 4, 0.5);
  GrayImage out = downscale(img, 2);
  CHECK(out.width == 2);
  CHECK(out.height == 2);
  for (double v : out.data) CHECK(v == doctest::Approx(0.5));

  // factor 1 is the identity
  GrayImage same = downscale(img, 1);
  CHECK(same.data == img.data);

  GrayImage block(2, 2);
  block.at(0, 0) = 0.0;
  block.at(1, 0) = 0.0;
  block.at(0, 1) = 1.0;
  block.at(1, 1) = 1.0;
  GrayImage one = downscale(block, 2);
  CHECK(one.width == 1);
  CHECK(one.at(0, 0) == doctest::Approx(0.5));

  CHECK_THROWS_AS(downscale(img, 0), std::invalid_argument);
}

TEST_CASE("downscale averages trailing partial blocks") {
  GrayImage img(5, 3);
  for (int y = 0; y < 3; ++y)
    for (int x = 0; x < 5; ++x) img.at(x, y) = double(x);
  GrayImage out = downscale(img, 2);
  CHECK(out.width == 3);
  CHECK(out.height == 2);
  CHECK(out.at(2, 0) == doctest::Approx(4.0));       // single trailing column
  CHECK(out.at(0, 1) == doctest::Approx(0.5));       // 2x1 block
}

TEST_CASE("render_overlay recolors exactly the drawn curves") {
  GrayImage img(10, 10, 0.25);
  std::vector<Pixel> contour = {{1, 1}, {2, 1}, {3, 1}};
  std::vector<std::vector<Pixel>> curves = {{{5, 5}, {6, 5}}};
  RgbImage out = render_overlay(img, curves, contour);

  int recolored = 0;
  for (int y = 0; y < 10; ++y)
    for (int x = 0; x < 10; ++x) {
      auto c = out.get(x, y);
      bool gray = c[0] == c[1] && c[1] == c[2] && c[0] == uint8_t(std::lround(0.25 * 255));
      if (!gray) ++recolored;
    }
  CHECK(recolored == 5);

  // empty path list leaves only the contour colored
  RgbImage contourOnly = render_overlay(img, {}, contour);
  auto c = contourOnly.get(5, 5);
  CHECK(c[0] == c[1]);
  CHECK(c[1] == c[2]);

  CHECK_THROWS_AS(render_overlay(img, {{{10, 0}}}, {}), std::out_of_range);
}
