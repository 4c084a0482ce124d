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

#include <stdexcept>
#include <string>

#include "vesseltrace/image.hpp"

namespace vtrace {

/// IO failures (missing file, malformed header, truncated data).
class ImageIoError : public std::runtime_error {
 public:
  explicit ImageIoError(const std::string& what) : std::runtime_error(what) {}
};

/// Loads a PNG (8-bit gray or RGB) or binary PGM (P5) as a normalized
/// grayscale image. Color inputs are reduced with Rec.601 luminance
/// weights; 8-bit samples are scaled by 1/255.
GrayImage load_image(const std::string& path);

/// Writes an 8-bit binary PGM (P5), quantizing intensities to 0..255.
void save_pgm(const GrayImage& img, const std::string& path);

/// Writes a 16-bit binary PGM; values are scaled so that `maxValue`
/// maps to 65535. Used for cost-field heatmap dumps.
void save_pgm16(const std::vector<double>& values, int width, int height,
                double maxValue, const std::string& path);

/// Writes an 8-bit grayscale PNG.
void save_png(const GrayImage& img, const std::string& path);

/// Writes an 8-bit RGB PNG.
void save_png(const RgbImage& img, const std::string& path);

}  // namespace vtrace
