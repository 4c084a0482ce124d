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

#include "vesseltrace/vessel.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <unordered_set>

namespace vtrace {

namespace {

constexpr int kNoDistance = std::numeric_limits<int>::max() / 4;

size_t flood4(const RegionMask& mask, std::vector<uint8_t>& visited, Pixel seed,
              uint8_t value) {
  // 4-connected flood over pixels where mask==value; returns the area.
  std::deque<Pixel> q{seed};
  visited[size_t(seed.y) * mask.width + seed.x] = 1;
  size_t area = 0;
  constexpr int dx[4] = {1, -1, 0, 0};
  constexpr int dy[4] = {0, 0, 1, -1};
  while (!q.empty()) {
    Pixel p = q.front();
    q.pop_front();
    ++area;
    for (int k = 0; k < 4; ++k) {
      int nx = p.x + dx[k], ny = p.y + dy[k];
      if (nx < 0 || nx >= mask.width || ny < 0 || ny >= mask.height) continue;
      size_t i = size_t(ny) * mask.width + nx;
      if (visited[i] || mask.data[i] != value) continue;
      visited[i] = 1;
      q.push_back({nx, ny});
    }
  }
  return area;
}

bool touches_background(const RegionMask& mask, int x, int y) {
  for (int oy = -1; oy <= 1; ++oy)
    for (int ox = -1; ox <= 1; ++ox) {
      if (ox == 0 && oy == 0) continue;
      int nx = x + ox, ny = y + oy;
      if (nx < 0 || nx >= mask.width || ny < 0 || ny >= mask.height) return true;
      if (!mask.at(nx, ny)) return true;
    }
  return false;
}

// Moore-neighbor boundary tracing, clockwise, carrying the backtrack
// (last examined background) pixel. The walk terminates when the
// (position, backtrack) state recurs, which closes the cycle exactly.
// Returns boundary pixels in first-visit order.
std::vector<Pixel> trace_contour(const RegionMask& mask) {
  Pixel start{-1, -1};
  for (int y = 0; y < mask.height && start.x < 0; ++y)
    for (int x = 0; x < mask.width; ++x)
      if (mask.at(x, y)) {
        start = {x, y};
        break;
      }

  // Clockwise Moore neighborhood starting from west.
  constexpr int mx[8] = {-1, -1, 0, 1, 1, 1, 0, -1};
  constexpr int my[8] = {0, -1, -1, -1, 0, 1, 1, 1};
  auto dir_index = [&](const Pixel& from, const Pixel& to) {
    for (int d = 0; d < 8; ++d)
      if (from.x + mx[d] == to.x && from.y + my[d] == to.y) return d;
    return -1;
  };

  std::vector<Pixel> walk;
  std::unordered_set<Pixel> seen;
  auto visit = [&](const Pixel& p) {
    if (seen.insert(p).second) walk.push_back(p);
  };

  // Row-major scan guarantees the west neighbor of the start is background.
  const Pixel b0{start.x - 1, start.y};
  Pixel cur = start;
  Pixel back = b0;
  visit(start);
  for (size_t guard = 0; guard < mask.data.size() * 8 + 16; ++guard) {
    int bd = dir_index(cur, back);
    int found = -1;
    for (int k = 1; k <= 8; ++k) {
      int dir = (bd + k) % 8;
      if (mask.test(cur.x + mx[dir], cur.y + my[dir])) {
        found = dir;
        break;
      }
    }
    if (found < 0) break;  // isolated pixel; cannot happen for area >= 9
    int prev = (found + 7) % 8;
    back = {cur.x + mx[prev], cur.y + my[prev]};
    if (found % 2 == 1) {
      // Diagonal step: the inner-corner pixel after the move direction is
      // also boundary (it touches the backtrack background diagonally) but
      // the walk would hop over it.
      int cornerDir = (found + 1) % 8;
      Pixel corner{cur.x + mx[cornerDir], cur.y + my[cornerDir]};
      if (mask.test(corner.x, corner.y)) visit(corner);
    }
    cur = {cur.x + mx[found], cur.y + my[found]};
    if (cur == start && back == b0) break;
    visit(cur);
  }
  return walk;
}

std::vector<int> chebyshev_distance(int width, int height,
                                    const std::vector<Pixel>& seeds) {
  std::vector<int> dist(size_t(width) * height, kNoDistance);
  for (const Pixel& p : seeds) dist[size_t(p.y) * width + p.x] = 0;

  auto relax = [&](int x, int y, int nx, int ny) {
    if (nx < 0 || nx >= width || ny < 0 || ny >= height) return;
    int cand = dist[size_t(ny) * width + nx] + 1;
    int& d = dist[size_t(y) * width + x];
    if (cand < d) d = cand;
  };
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x) {
      relax(x, y, x - 1, y);
      relax(x, y, x - 1, y - 1);
      relax(x, y, x, y - 1);
      relax(x, y, x + 1, y - 1);
    }
  for (int y = height - 1; y >= 0; --y)
    for (int x = width - 1; x >= 0; --x) {
      relax(x, y, x + 1, y);
      relax(x, y, x + 1, y + 1);
      relax(x, y, x, y + 1);
      relax(x, y, x - 1, y + 1);
    }
  return dist;
}

}  // namespace

size_t RegionMask::count() const {
  size_t n = 0;
  for (uint8_t v : data) n += (v != 0);
  return n;
}

bool VesselGeometry::on_contour(const Pixel& p) const {
  if (!interior.test(p.x, p.y)) return false;
  return dist(p.x, p.y) == 0;
}

VesselGeometry from_interior_mask(const RegionMask& mask) {
  if (mask.width < 3 || mask.height < 3)
    throw VesselError("mask must be at least 3x3");

  Pixel seed{-1, -1};
  size_t total = 0;
  for (int y = 0; y < mask.height; ++y)
    for (int x = 0; x < mask.width; ++x)
      if (mask.at(x, y)) {
        ++total;
        if (seed.x < 0) seed = {x, y};
        if (x == 0 || y == 0 || x == mask.width - 1 || y == mask.height - 1)
          throw VesselError("vessel component touches the image border");
      }
  if (total == 0) throw VesselError("empty mask");
  if (total < 9) throw VesselError("vessel component area must be >= 9");

  std::vector<uint8_t> visited(mask.data.size(), 0);
  size_t area = flood4(mask, visited, seed, 1);
  if (area != total) throw VesselError("multiple components");

  // Hole check: all background must be 4-reachable from the border.
  std::vector<uint8_t> bgseen(mask.data.size(), 0);
  size_t bgReached = flood4(mask, bgseen, {0, 0}, 0);
  if (bgReached != mask.data.size() - total)
    throw VesselError("mask has holes");

  VesselGeometry g;
  g.width = mask.width;
  g.height = mask.height;
  g.interior = mask;
  g.contour = trace_contour(mask);

  g.yTop.assign(size_t(mask.width), -1);
  g.yBottom.assign(size_t(mask.width), -1);
  g.yMin = mask.height;
  g.yMax = -1;
  g.xMin = mask.width;
  g.xMax = -1;
  size_t runCount = 0;
  for (int y = 0; y < mask.height; ++y) {
    bool inRun = false;
    for (int x = 0; x < mask.width; ++x) {
      if (!mask.at(x, y)) {
        inRun = false;
        continue;
      }
      if (!inRun) {
        inRun = true;
        ++runCount;
      }
      if (g.yTop[size_t(x)] < 0) g.yTop[size_t(x)] = y;
      g.yBottom[size_t(x)] = y;
      g.yMin = std::min(g.yMin, y);
      g.yMax = std::max(g.yMax, y);
      g.xMin = std::min(g.xMin, x);
      g.xMax = std::max(g.xMax, x);
    }
  }
  g.averageWidth = double(total) / double(runCount);
  g.verticalExtent = g.yMax - g.yMin + 1;
  g.distToBoundary = chebyshev_distance(mask.width, mask.height, g.contour);
  return g;
}

VesselGeometry from_contour_points(const std::vector<Pixel>& points, int width,
                                   int height) {
  if (width < 3 || height < 3) throw VesselError("dims must be at least 3x3");
  std::vector<Pixel> loop = points;
  if (loop.size() >= 2 && loop.front() == loop.back()) loop.pop_back();
  if (loop.size() < 8) throw VesselError("contour loop too short");

  std::unordered_set<Pixel> seen;
  for (size_t i = 0; i < loop.size(); ++i) {
    const Pixel& p = loop[i];
    if (p.x < 0 || p.x >= width || p.y < 0 || p.y >= height)
      throw VesselError("contour point outside image");
    if (!seen.insert(p).second) throw VesselError("self-crossing loop");
    const Pixel& q = loop[(i + 1) % loop.size()];
    int step = std::max(std::abs(p.x - q.x), std::abs(p.y - q.y));
    if (step != 1) throw VesselError("open loop: consecutive points not 8-adjacent");
  }

  RegionMask curve(width, height);
  for (const Pixel& p : loop) curve.at(p.x, p.y) = 1;

  // Exterior = background 4-reachable from the border; interior is the rest.
  std::vector<uint8_t> exterior(curve.data.size(), 0);
  for (int x = 0; x < width; ++x) {
    if (!curve.at(x, 0) && !exterior[size_t(x)]) flood4(curve, exterior, {x, 0}, 0);
    if (!curve.at(x, height - 1) && !exterior[size_t(height - 1) * width + x])
      flood4(curve, exterior, {x, height - 1}, 0);
  }
  for (int y = 0; y < height; ++y) {
    if (!curve.at(0, y) && !exterior[size_t(y) * width]) flood4(curve, exterior, {0, y}, 0);
    if (!curve.at(width - 1, y) && !exterior[size_t(y) * width + width - 1])
      flood4(curve, exterior, {width - 1, y}, 0);
  }

  RegionMask filled(width, height);
  for (size_t i = 0; i < filled.data.size(); ++i)
    filled.data[i] = exterior[i] ? 0 : 1;
  return from_interior_mask(filled);
}

RegionMask penalty_zone(const VesselGeometry& geom, double radius) {
  if (radius < 0) throw std::invalid_argument("penalty_zone: radius must be >= 0");
  RegionMask zone(geom.width, geom.height);
  for (int y = 0; y < geom.height; ++y)
    for (int x = 0; x < geom.width; ++x)
      if (geom.interior.at(x, y) && double(geom.dist(x, y)) <= radius)
        zone.at(x, y) = 1;
  return zone;
}

RegionMask excluded_band(const VesselGeometry& geom, double topFrac,
                         double bottomFrac) {
  if (topFrac < 0 || topFrac >= 1 || bottomFrac < 0 || bottomFrac >= 1 ||
      topFrac + bottomFrac >= 1)
    throw std::invalid_argument("excluded_band: fractions out of range");
  RegionMask band(geom.width, geom.height);
  const double topDepth = topFrac * geom.verticalExtent;
  const double bottomDepth = bottomFrac * geom.verticalExtent;
  for (int y = geom.yMin; y <= geom.yMax; ++y) {
    bool inTop = double(y - geom.yMin) < topDepth;
    bool inBottom = double(geom.yMax - y) < bottomDepth;
    if (!inTop && !inBottom) continue;
    for (int x = 0; x < geom.width; ++x)
      if (geom.interior.at(x, y)) band.at(x, y) = 1;
  }
  return band;
}

}  // namespace vtrace
