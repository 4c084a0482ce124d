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

#include "vesseltrace/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace vtrace {

namespace {

constexpr double kBackground = 0.10;
constexpr double kWall = 0.95;
constexpr int kWallThickness = 2;

double uniform01(std::mt19937& rng) {
  // 24 explicit mantissa bits; identical on every platform.
  return double(rng() >> 8) * (1.0 / 16777216.0);
}

double gaussian(std::mt19937& rng) {
  // Box-Muller; avoids std::normal_distribution's unspecified algorithm.
  double u1 = std::max(uniform01(rng), 1e-12);
  double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

RegionMask silhouette_mask(const SyntheticSpec& spec) {
  const int w = spec.width, h = spec.height;
  int margin = std::max(kWallThickness + 1, int(std::lround(spec.marginFrac * std::min(w, h))));
  const int x0 = margin, x1 = w - 1 - margin;
  const int y0 = margin, y1 = h - 1 - margin;
  if (x1 - x0 < 8 || y1 - y0 < 8)
    throw std::invalid_argument("synthetic: image too small for the vessel");

  RegionMask mask(w, h);
  const double cx = 0.5 * (x0 + x1);
  const double bottomHalf = 0.5 * (x1 - x0);
  for (int y = y0; y <= y1; ++y) {
    double half = bottomHalf;
    if (spec.silhouette == Silhouette::Trapezoid) {
      double t = double(y - y0) / double(y1 - y0);  // 0 at top
      double topHalf = bottomHalf * spec.trapezoidTopFrac;
      half = topHalf + (bottomHalf - topHalf) * t;
    } else if (spec.silhouette == Silhouette::Flask) {
      double neckRows = spec.flaskNeckHeightFrac * (y1 - y0);
      if (double(y - y0) < neckRows) half = bottomHalf * spec.flaskNeckFrac;
    }
    for (int x = x0; x <= x1; ++x)
      if (std::abs(double(x) - cx) <= half) mask.at(x, y) = 1;
  }
  return mask;
}

// Expands per-column target levels into a legal move sequence. Column
// steps larger than one pixel become a vertical run plus a diagonal.
std::vector<Pixel> legalize_path(const std::vector<int>& xs,
                                 const std::vector<int>& ys, int vMax) {
  std::vector<Pixel> pts;
  pts.push_back({xs.front(), ys.front()});
  for (size_t i = 1; i < xs.size(); ++i) {
    int curY = pts.back().y;
    int target = ys[i];
    int delta = target - curY;
    int verticals = std::max(0, std::abs(delta) - 1);
    if (verticals > vMax)
      throw std::invalid_argument("synthetic: boundary shape steeper than the move set allows");
    int dir = delta > 0 ? 1 : -1;
    for (int k = 0; k < verticals; ++k) {
      curY += dir;
      pts.push_back({xs[i - 1], curY});
    }
    pts.push_back({xs[i], target});
  }
  return pts;
}

struct Scene {
  RegionMask interior;
  GrayImage image;
};

Scene paint_vessel(const SyntheticSpec& spec) {
  Scene s;
  s.interior = silhouette_mask(spec);
  s.image = GrayImage(spec.width, spec.height, kBackground);
  for (int y = 0; y < spec.height; ++y)
    for (int x = 0; x < spec.width; ++x) {
      if (s.interior.at(x, y)) continue;
      bool nearInterior = false;
      for (int oy = -kWallThickness; oy <= kWallThickness && !nearInterior; ++oy)
        for (int ox = -kWallThickness; ox <= kWallThickness; ++ox)
          if (s.interior.test(x + ox, y + oy)) {
            nearInterior = true;
            break;
          }
      if (nearInterior) s.image.at(x, y) = kWall;
    }
  return s;
}

void paint_material(Scene& s, const std::vector<Pixel>& boundary, double intensity) {
  // Material fills interior pixels from the boundary's topmost point of
  // each column downward (the boundary row itself included).
  std::vector<int> topAt(size_t(s.image.width), -1);
  for (const Pixel& p : boundary) {
    int& t = topAt[size_t(p.x)];
    if (t < 0 || p.y < t) t = p.y;
  }
  for (int x = 0; x < s.image.width; ++x) {
    if (topAt[size_t(x)] < 0) continue;
    for (int y = topAt[size_t(x)]; y < s.image.height; ++y)
      if (s.interior.at(x, y)) s.image.at(x, y) = intensity;
  }
}

void apply_noise(Scene& s, const SyntheticSpec& spec) {
  if (spec.noiseSigma <= 0.0 && spec.speckleDensity <= 0.0) return;
  std::mt19937 rng(spec.seed);
  if (spec.noiseSigma > 0.0)
    for (double& v : s.image.data)
      v = std::clamp(v + spec.noiseSigma * gaussian(rng), 0.0, 1.0);
  if (spec.speckleDensity > 0.0)
    for (double& v : s.image.data)
      if (uniform01(rng) < spec.speckleDensity) v = uniform01(rng);
}

// Per-column interior spans. All built-in silhouettes are column-convex,
// so one (top, bottom) pair per column describes the interior exactly.
struct ColumnSpans {
  std::vector<int> top, bottom;  // -1 where the column has no interior
  int yMin = 0, yMax = 0, xMin = 0, xMax = 0;
};

ColumnSpans column_spans(const RegionMask& interior) {
  ColumnSpans cs;
  cs.top.assign(size_t(interior.width), -1);
  cs.bottom.assign(size_t(interior.width), -1);
  cs.yMin = interior.height;
  cs.yMax = -1;
  cs.xMin = interior.width;
  cs.xMax = -1;
  for (int y = 0; y < interior.height; ++y)
    for (int x = 0; x < interior.width; ++x)
      if (interior.at(x, y)) {
        if (cs.top[size_t(x)] < 0) cs.top[size_t(x)] = y;
        cs.bottom[size_t(x)] = y;
        cs.yMin = std::min(cs.yMin, y);
        cs.yMax = std::max(cs.yMax, y);
        cs.xMin = std::min(cs.xMin, x);
        cs.xMax = std::max(cs.xMax, x);
      }
  if (cs.yMax < cs.yMin) throw std::invalid_argument("synthetic: empty silhouette");
  return cs;
}

// Builds the per-column boundary level for a shape, then clips it to the
// maximal contiguous column span (through the vessel center) where it stays
// inside the interior. The span ends become the contour endpoints.
std::vector<Pixel> shaped_boundary(const SyntheticSpec& spec, const ColumnSpans& cs,
                                   double levelFrac, BoundaryShape shape, int vMax) {
  const int levelY =
      cs.yMin + int(std::lround(levelFrac * (cs.yMax - cs.yMin)));
  const double cx = 0.5 * (cs.xMin + cs.xMax);

  auto shape_dy = [&](int x) -> double {
    switch (shape) {
      case BoundaryShape::Flat:
        return 0.0;
      case BoundaryShape::Slanted: {
        if (spec.slantDeg < 0.0 || spec.slantDeg > 45.0)
          throw std::invalid_argument("synthetic: slant angle must be in [0,45] degrees");
        double slope = std::tan(spec.slantDeg * std::numbers::pi / 180.0);
        return slope * (double(x) - cx);
      }
      case BoundaryShape::Sine: {
        if (spec.sinePeriod < 8.0)
          throw std::invalid_argument("synthetic: sine period too small");
        double maxSlope = spec.sineAmplitude * 2.0 * std::numbers::pi / spec.sinePeriod;
        if (maxSlope > 1.5)
          throw std::invalid_argument("synthetic: sine boundary too steep");
        return spec.sineAmplitude *
               std::sin(2.0 * std::numbers::pi * (double(x) - cx) / spec.sinePeriod);
      }
      case BoundaryShape::StepBump: {
        int h = int(std::lround(spec.stepHeight));
        double stepX = cs.xMin + spec.stepPosFrac * (cs.xMax - cs.xMin);
        int cols = std::max(1, (h + vMax) / (vMax + 1));
        double t = std::clamp((double(x) - stepX) / double(cols), 0.0, 1.0);
        return -0.5 * h + t * h;
      }
    }
    return 0.0;
  };

  std::vector<int> level(size_t(cs.xMax + 1), -1);
  for (int x = cs.xMin; x <= cs.xMax; ++x)
    level[size_t(x)] = levelY + int(std::lround(shape_dy(x)));

  auto inside = [&](int x) {
    return x >= cs.xMin && x <= cs.xMax && cs.top[size_t(x)] >= 0 &&
           level[size_t(x)] >= cs.top[size_t(x)] &&
           level[size_t(x)] <= cs.bottom[size_t(x)];
  };
  int anchor = int(std::lround(cx));
  if (!inside(anchor))
    throw std::invalid_argument("synthetic: boundary level runs outside the vessel");
  int xL = anchor, xR = anchor;
  while (inside(xL - 1)) --xL;
  while (inside(xR + 1)) ++xR;
  if (xR - xL < 8)
    throw std::invalid_argument("synthetic: boundary span too short");

  std::vector<int> xs, ys;
  for (int x = xL; x <= xR; ++x) {
    xs.push_back(x);
    ys.push_back(level[size_t(x)]);
  }

  // Where the curve meets a slanted wall it can sit strictly inside the
  // neighbor column's span; snap the end to that span's nearer bound so the
  // endpoint is a contour pixel.
  auto snap_end = [&](int x, int y, int xNeighbor) {
    if (xNeighbor < cs.xMin || xNeighbor > cs.xMax) return y;
    int t = cs.top[size_t(xNeighbor)];
    if (t < 0) return y;
    int b = cs.bottom[size_t(xNeighbor)];
    if (y <= t || y >= b) return y;  // already touches background there
    int snapped = (y - t <= b - y) ? t : b;
    if (std::abs(snapped - y) > vMax + 1)
      throw std::invalid_argument("synthetic: boundary cannot reach the vessel wall");
    return snapped;
  };
  ys.front() = snap_end(xL, ys.front(), xL - 1);
  ys.back() = snap_end(xR, ys.back(), xR + 1);
  return legalize_path(xs, ys, vMax);
}

BoundaryPath to_ground_truth(std::vector<Pixel> pts) {
  BoundaryPath gt;
  gt.points = std::move(pts);
  gt.rawCost = 0.0;
  gt.normalizedCost = 0.0;
  return gt;
}

void validate_ground_truth(const VesselGeometry& geom, const BoundaryPath& gt) {
  const ScanConfig cfg;  // defaults: the constraints the tracer will apply
  const Pixel s = gt.points.front();
  const Pixel e = gt.points.back();
  if (!geom.on_contour(s) || !geom.on_contour(e))
    throw std::invalid_argument("synthetic: boundary endpoints not on the contour");

  const int dx = e.x - s.x;
  if (double(dx) < std::max(1.0, cfg.minLengthFrac * geom.averageWidth))
    throw std::invalid_argument("synthetic: boundary shorter than the minimal length");
  double angle = std::atan2(double(std::abs(e.y - s.y)), double(dx)) * 180.0 /
                 std::numbers::pi;
  if (angle > cfg.thetaMaxDeg)
    throw std::invalid_argument("synthetic: boundary endpoint line exceeds the angle limit");

  const PathConstraints pc(geom, cfg);
  if (pc.in_excluded_band(s.x, s.y) || pc.in_excluded_band(e.x, e.y))
    throw std::invalid_argument("synthetic: boundary endpoints inside an excluded band");
  for (const Pixel& p : gt.points)
    if (!pc.pair_legal(s, e, p.x, p.y))
      throw std::invalid_argument("synthetic: boundary leaves its own legal region");
}

}  // namespace

Silhouette parse_silhouette(const std::string& name) {
  if (name == "rectangle") return Silhouette::Rectangle;
  if (name == "trapezoid") return Silhouette::Trapezoid;
  if (name == "flask") return Silhouette::Flask;
  throw std::invalid_argument("unknown silhouette: " + name);
}

std::string silhouette_name(Silhouette s) {
  switch (s) {
    case Silhouette::Rectangle: return "rectangle";
    case Silhouette::Trapezoid: return "trapezoid";
    case Silhouette::Flask: return "flask";
  }
  return "?";
}

BoundaryShape parse_boundary_shape(const std::string& name) {
  if (name == "flat") return BoundaryShape::Flat;
  if (name == "slanted") return BoundaryShape::Slanted;
  if (name == "sine") return BoundaryShape::Sine;
  if (name == "step-bump") return BoundaryShape::StepBump;
  throw std::invalid_argument("unknown boundary shape: " + name);
}

std::string boundary_shape_name(BoundaryShape s) {
  switch (s) {
    case BoundaryShape::Flat: return "flat";
    case BoundaryShape::Slanted: return "slanted";
    case BoundaryShape::Sine: return "sine";
    case BoundaryShape::StepBump: return "step-bump";
  }
  return "?";
}

SyntheticCase generate_synthetic(const SyntheticSpec& spec) {
  if (spec.contrast < 0.0 || spec.contrast > 1.0 - kBackground)
    throw std::invalid_argument("synthetic: contrast out of range");
  const ScanConfig defaults;

  Scene scene = paint_vessel(spec);
  ColumnSpans spans = column_spans(scene.interior);
  std::vector<Pixel> pts =
      shaped_boundary(spec, spans, spec.levelFrac, spec.boundary, defaults.vMax);
  paint_material(scene, pts, kBackground + spec.contrast);
  apply_noise(scene, spec);

  SyntheticCase out;
  out.groundTruth = to_ground_truth(std::move(pts));
  out.image = std::move(scene.image);
  out.interior = std::move(scene.interior);

  VesselGeometry geom = from_interior_mask(out.interior);
  validate_ground_truth(geom, out.groundTruth);
  return out;
}

TwoPhaseCase generate_two_phase(const SyntheticSpec& spec, double upperLevelFrac,
                                double lowerLevelFrac) {
  if (!(upperLevelFrac < lowerLevelFrac))
    throw std::invalid_argument("two_phase: upper boundary must sit above the lower one");

  Scene scene = paint_vessel(spec);
  ColumnSpans spans = column_spans(scene.interior);
  const ScanConfig defaults;
  std::vector<Pixel> upperPts =
      shaped_boundary(spec, spans, upperLevelFrac, BoundaryShape::Flat, defaults.vMax);
  std::vector<Pixel> lowerPts =
      shaped_boundary(spec, spans, lowerLevelFrac, BoundaryShape::Flat, defaults.vMax);

  const double mid = kBackground + 0.5 * spec.contrast;
  const double bottom = kBackground + spec.contrast;
  paint_material(scene, upperPts, mid);
  paint_material(scene, lowerPts, bottom);
  apply_noise(scene, spec);

  TwoPhaseCase out;
  out.upperBoundary = to_ground_truth(std::move(upperPts));
  out.lowerBoundary = to_ground_truth(std::move(lowerPts));
  out.image = std::move(scene.image);
  out.interior = std::move(scene.interior);

  VesselGeometry geom = from_interior_mask(out.interior);
  validate_ground_truth(geom, out.upperBoundary);
  validate_ground_truth(geom, out.lowerBoundary);
  return out;
}

}  // namespace vtrace
