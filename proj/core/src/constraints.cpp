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

#include "vesseltrace/constraints.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace vtrace {

namespace {
constexpr double kDegPerRad = 180.0 / std::numbers::pi;
}

PathConstraints::PathConstraints(const VesselGeometry& geom, const ScanConfig& cfg)
    : geom_(&geom),
      tanPhi_(std::tan(cfg.phiMaxDeg / kDegPerRad)),
      flatD_(resolved_flat_d(cfg, geom)),
      topDepth_(cfg.topFrac * geom.verticalExtent),
      bottomDepth_(cfg.bottomFrac * geom.verticalExtent) {}

bool PathConstraints::pair_legal(const Pixel& s, const Pixel& e, int x, int y) const {
  if (x < s.x || x > e.x) return false;
  if ((x == s.x && y == s.y) || (x == e.x && y == e.y)) return true;
  if (!geom_->interior.test(x, y)) return false;
  if (in_excluded_band(x, y)) return false;

  const int dxS = x - s.x;
  const int dxE = e.x - x;
  if (dxS >= 2 && double(std::abs(y - s.y)) > tanPhi_ * dxS) return false;
  if (dxE >= 2 && double(std::abs(y - e.y)) > tanPhi_ * dxE) return false;

  const double m = std::min({0.25 * dxS, 0.25 * dxE, flatD_});
  const double dy1 = double(y - geom_->yTop[size_t(x)]);
  const double dy2 = double(geom_->yBottom[size_t(x)] - y);
  return dy1 > m && dy2 > m;
}

bool PathConstraints::source_legal(const Pixel& s, int x, int y) const {
  if (x < s.x) return false;
  if (x == s.x && y == s.y) return true;
  if (!geom_->interior.test(x, y)) return false;
  if (in_excluded_band(x, y)) return false;

  const int dxS = x - s.x;
  if (dxS >= 2 && double(std::abs(y - s.y)) > tanPhi_ * dxS) return false;

  const double m = std::min(0.25 * dxS, flatD_);
  const double dy1 = double(y - geom_->yTop[size_t(x)]);
  const double dy2 = double(geom_->yBottom[size_t(x)] - y);
  return dy1 > m && dy2 > m;
}

bool PathConstraints::sweep_legal(const Pixel& s, int x, int y, int dxToSink) const {
  if (x < s.x) return false;
  if (x == s.x && y == s.y) return true;
  if (!geom_->interior.test(x, y)) return false;
  if (in_excluded_band(x, y)) return false;

  const int dxS = x - s.x;
  if (dxS >= 2 && double(std::abs(y - s.y)) > tanPhi_ * dxS) return false;

  double m = std::min(0.25 * dxS, flatD_);
  if (dxToSink >= 0) m = std::min(m, 0.25 * dxToSink);
  const double dy1 = double(y - geom_->yTop[size_t(x)]);
  const double dy2 = double(geom_->yBottom[size_t(x)] - y);
  return dy1 > m && dy2 > m;
}

std::vector<EndpointPair> enumerate_endpoint_pairs(const VesselGeometry& geom,
                                                   const ScanConfig& cfg) {
  cfg.validate();
  const PathConstraints pc(geom, cfg);
  const double minLength = std::max(1.0, cfg.minLengthFrac * geom.averageWidth);
  const double tanTheta = std::tan(cfg.thetaMaxDeg / kDegPerRad);

  const int n = int(geom.contour.size());
  std::vector<uint8_t> usable(size_t(n), 0);
  for (int i = 0; i < n; ++i) {
    const Pixel& p = geom.contour[size_t(i)];
    usable[size_t(i)] = !pc.in_excluded_band(p.x, p.y);
  }

  std::vector<EndpointPair> pairs;
  for (int i = 0; i < n; ++i) {
    if (!usable[size_t(i)]) continue;
    const Pixel& a = geom.contour[size_t(i)];
    for (int j = i + 1; j < n; ++j) {
      if (!usable[size_t(j)]) continue;
      const Pixel& b = geom.contour[size_t(j)];
      int dx = std::abs(a.x - b.x);
      if (double(dx) < minLength) continue;
      int dy = std::abs(a.y - b.y);
      if (double(dy) > tanTheta * dx) continue;

      EndpointPair p;
      if (a.x < b.x) {
        p.s = a;
        p.e = b;
        p.sIndex = i;
        p.eIndex = j;
      } else {
        p.s = b;
        p.e = a;
        p.sIndex = j;
        p.eIndex = i;
      }
      p.dx = dx;
      p.lineAngleDeg = std::atan2(double(dy), double(dx)) * kDegPerRad;
      pairs.push_back(p);
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const EndpointPair& l, const EndpointPair& r) {
    return l.sIndex != r.sIndex ? l.sIndex < r.sIndex : l.eIndex < r.eIndex;
  });
  return pairs;
}

RegionMask pair_legal_region(const VesselGeometry& geom, const Pixel& s,
                             const Pixel& e, const ScanConfig& cfg) {
  if (!geom.on_contour(s) || !geom.on_contour(e))
    throw VesselError("pair_legal_region: endpoint not on the vessel contour");
  const PathConstraints pc(geom, cfg);
  RegionMask mask(geom.width, geom.height);
  const int y0 = std::max(0, geom.yMin), y1 = std::min(geom.height - 1, geom.yMax);
  for (int x = std::max(0, s.x); x <= std::min(geom.width - 1, e.x); ++x)
    for (int y = y0; y <= y1; ++y)
      if (pc.pair_legal(s, e, x, y)) mask.at(x, y) = 1;
  return mask;
}

RegionMask source_legal_region(const VesselGeometry& geom, const Pixel& s,
                               const ScanConfig& cfg) {
  if (!geom.on_contour(s))
    throw VesselError("source_legal_region: endpoint not on the vessel contour");
  const PathConstraints pc(geom, cfg);
  RegionMask mask(geom.width, geom.height);
  const int y0 = std::max(0, geom.yMin), y1 = std::min(geom.height - 1, geom.yMax);
  for (int x = std::max(0, s.x); x <= std::min(geom.width - 1, geom.xMax); ++x)
    for (int y = y0; y <= y1; ++y)
      if (pc.source_legal(s, x, y)) mask.at(x, y) = 1;
  return mask;
}

}  // namespace vtrace
