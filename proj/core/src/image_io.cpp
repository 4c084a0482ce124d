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

#include "vesseltrace/image_io.hpp"

#include <png.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <vector>

namespace vtrace {

namespace {

constexpr double kR601 = 0.299, kG601 = 0.587, kB601 = 0.114;

int read_pnm_token(std::istream& in) {
  // Skips whitespace and '#' comments, then reads one unsigned integer.
  int c = in.get();
  while (c != EOF) {
    if (c == '#') {
      while (c != EOF && c != '\n') c = in.get();
    } else if (!std::isspace(c)) {
      break;
    }
    c = in.get();
  }
  if (c == EOF || !std::isdigit(c)) return -1;
  int value = 0;
  while (c != EOF && std::isdigit(c)) {
    value = value * 10 + (c - '0');
    if (value > 1 << 28) return -1;
    c = in.get();
  }
  return value;
}

GrayImage load_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ImageIoError("unreadable file: " + path);
  char magic[2] = {0, 0};
  in.read(magic, 2);
  if (magic[0] != 'P' || magic[1] != '5')
    throw ImageIoError("unsupported format (expected binary PGM P5): " + path);
  int w = read_pnm_token(in);
  int h = read_pnm_token(in);
  int maxval = read_pnm_token(in);
  if (w <= 0 || h <= 0)
    throw ImageIoError("zero-dimension image: " + path);
  if (maxval <= 0 || maxval > 65535)
    throw ImageIoError("unsupported format (bad PGM maxval): " + path);

  GrayImage img(w, h);
  size_t n = size_t(w) * h;
  if (maxval < 256) {
    std::vector<uint8_t> raw(n);
    in.read(reinterpret_cast<char*>(raw.data()), std::streamsize(n));
    if (size_t(in.gcount()) != n) throw ImageIoError("unreadable file (truncated PGM): " + path);
    for (size_t i = 0; i < n; ++i) img.data[i] = raw[i] / double(maxval);
  } else {
    std::vector<uint8_t> raw(n * 2);
    in.read(reinterpret_cast<char*>(raw.data()), std::streamsize(n * 2));
    if (size_t(in.gcount()) != n * 2) throw ImageIoError("unreadable file (truncated PGM): " + path);
    for (size_t i = 0; i < n; ++i) {
      int v = (raw[2 * i] << 8) | raw[2 * i + 1];  // big-endian per spec
      img.data[i] = v / double(maxval);
    }
  }
  return img;
}

struct PngReader {
  png_structp png = nullptr;
  png_infop info = nullptr;
  FILE* fp = nullptr;
  ~PngReader() {
    if (png) png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
    if (fp) std::fclose(fp);
  }
};

struct PngWriter {
  png_structp png = nullptr;
  png_infop info = nullptr;
  FILE* fp = nullptr;
  ~PngWriter() {
    if (png) png_destroy_write_struct(&png, info ? &info : nullptr);
    if (fp) std::fclose(fp);
  }
};

GrayImage load_png_file(const std::string& path) {
  PngReader r;
  r.fp = std::fopen(path.c_str(), "rb");
  if (!r.fp) throw ImageIoError("unreadable file: " + path);

  unsigned char sig[8];
  if (std::fread(sig, 1, 8, r.fp) != 8 || png_sig_cmp(sig, 0, 8))
    throw ImageIoError("unsupported format (not a PNG): " + path);

  r.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!r.png) throw ImageIoError("png init failed");
  r.info = png_create_info_struct(r.png);
  if (!r.info) throw ImageIoError("png init failed");
  if (setjmp(png_jmpbuf(r.png))) throw ImageIoError("unreadable file (corrupt PNG): " + path);

  png_init_io(r.png, r.fp);
  png_set_sig_bytes(r.png, 8);
  png_read_info(r.png, r.info);

  png_uint_32 w = png_get_image_width(r.png, r.info);
  png_uint_32 h = png_get_image_height(r.png, r.info);
  if (w == 0 || h == 0) throw ImageIoError("zero-dimension image: " + path);

  // Normalize everything to 8-bit gray or RGB.
  png_byte color = png_get_color_type(r.png, r.info);
  if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(r.png);
  if (png_get_bit_depth(r.png, r.info) == 16) png_set_strip_16(r.png);
  if (color == PNG_COLOR_TYPE_GRAY && png_get_bit_depth(r.png, r.info) < 8)
    png_set_expand_gray_1_2_4_to_8(r.png);
  if (png_get_valid(r.png, r.info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(r.png);
  png_set_strip_alpha(r.png);
  png_read_update_info(r.png, r.info);

  int channels = png_get_channels(r.png, r.info);
  if (channels != 1 && channels != 3)
    throw ImageIoError("unsupported format (PNG channels): " + path);

  std::vector<uint8_t> row(size_t(w) * channels);
  GrayImage img{int(w), int(h)};
  for (png_uint_32 y = 0; y < h; ++y) {
    png_read_row(r.png, row.data(), nullptr);
    if (channels == 1) {
      for (png_uint_32 x = 0; x < w; ++x) img.at(int(x), int(y)) = row[x] / 255.0;
    } else {
      for (png_uint_32 x = 0; x < w; ++x) {
        double lum = kR601 * row[3 * x] + kG601 * row[3 * x + 1] + kB601 * row[3 * x + 2];
        img.at(int(x), int(y)) = lum / 255.0;
      }
    }
  }
  png_read_end(r.png, nullptr);
  return img;
}

void write_png_rows(const std::string& path, int width, int height,
                    int colorType, int channels,
                    const std::vector<uint8_t>& bytes) {
  PngWriter w;
  w.fp = std::fopen(path.c_str(), "wb");
  if (!w.fp) throw ImageIoError("cannot open for writing: " + path);
  w.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!w.png) throw ImageIoError("png init failed");
  w.info = png_create_info_struct(w.png);
  if (!w.info) throw ImageIoError("png init failed");
  if (setjmp(png_jmpbuf(w.png))) throw ImageIoError("png write failed: " + path);

  png_init_io(w.png, w.fp);
  png_set_IHDR(w.png, w.info, png_uint_32(width), png_uint_32(height), 8, colorType,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(w.png, w.info);
  for (int y = 0; y < height; ++y)
    png_write_row(w.png, const_cast<png_bytep>(bytes.data() + size_t(y) * width * channels));
  png_write_end(w.png, nullptr);
}

bool has_suffix(const std::string& s, const std::string& suffix) {
  if (s.size() < suffix.size()) return false;
  std::string tail = s.substr(s.size() - suffix.size());
  for (auto& c : tail) c = char(std::tolower(c));
  return tail == suffix;
}

}  // namespace

GrayImage load_image(const std::string& path) {
  if (has_suffix(path, ".pgm")) return load_pgm(path);
  if (has_suffix(path, ".png")) return load_png_file(path);
  // No recognized extension: sniff the first bytes.
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ImageIoError("unreadable file: " + path);
  char magic[2] = {0, 0};
  in.read(magic, 2);
  in.close();
  if (magic[0] == 'P' && magic[1] == '5') return load_pgm(path);
  if (uint8_t(magic[0]) == 0x89 && magic[1] == 'P') return load_png_file(path);
  throw ImageIoError("unsupported format: " + path);
}

void save_pgm(const GrayImage& img, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ImageIoError("cannot open for writing: " + path);
  out << "P5\n" << img.width << " " << img.height << "\n255\n";
  std::vector<uint8_t> raw(img.data.size());
  for (size_t i = 0; i < img.data.size(); ++i) {
    double v = std::clamp(img.data[i], 0.0, 1.0);
    raw[i] = uint8_t(std::lround(v * 255.0));
  }
  out.write(reinterpret_cast<const char*>(raw.data()), std::streamsize(raw.size()));
  if (!out) throw ImageIoError("write failed: " + path);
}

void save_pgm16(const std::vector<double>& values, int width, int height,
                double maxValue, const std::string& path) {
  if (width <= 0 || height <= 0 || values.size() != size_t(width) * height)
    throw ImageIoError("save_pgm16: dimension mismatch");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ImageIoError("cannot open for writing: " + path);
  out << "P5\n" << width << " " << height << "\n65535\n";
  double scale = maxValue > 0 ? 65535.0 / maxValue : 0.0;
  std::vector<uint8_t> raw(values.size() * 2);
  for (size_t i = 0; i < values.size(); ++i) {
    double v = std::clamp(values[i] * scale, 0.0, 65535.0);
    auto q = uint16_t(std::lround(v));
    raw[2 * i] = uint8_t(q >> 8);
    raw[2 * i + 1] = uint8_t(q & 0xff);
  }
  out.write(reinterpret_cast<const char*>(raw.data()), std::streamsize(raw.size()));
  if (!out) throw ImageIoError("write failed: " + path);
}

void save_png(const GrayImage& img, const std::string& path) {
  std::vector<uint8_t> bytes(img.data.size());
  for (size_t i = 0; i < img.data.size(); ++i)
    bytes[i] = uint8_t(std::lround(std::clamp(img.data[i], 0.0, 1.0) * 255.0));
  write_png_rows(path, img.width, img.height, PNG_COLOR_TYPE_GRAY, 1, bytes);
}

void save_png(const RgbImage& img, const std::string& path) {
  write_png_rows(path, img.width, img.height, PNG_COLOR_TYPE_RGB, 3, img.data);
}

}  // namespace vtrace
