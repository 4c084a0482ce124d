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

#include "vesseltrace/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

#include "vesseltrace/detail/parallel.hpp"

namespace vtrace {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Run codes order the augmented states for tie-breaking: 0 = no active
// vertical run, odd 2r-1 = upward run of length r, even 2r = downward run.
struct HeapEntry {
  double cost;
  uint64_t tie;  // (x, y, run code) packed, lexicographic
  int32_t state;
};
struct HeapCmp {
  bool operator()(const HeapEntry& a, const HeapEntry& b) const {
    if (a.cost != b.cost) return a.cost > b.cost;
    return a.tie > b.tie;
  }
};

uint64_t tie_key(int x, int y, int code) {
  return (uint64_t(uint32_t(x)) << 40) | (uint64_t(uint32_t(y)) << 16) |
         uint64_t(uint32_t(code));
}

}  // namespace

/// Dijkstra over the (pixel, vertical-run) state graph restricted to a
/// column window. Pop order is total-ordered by (cost, x, y, run code), so
/// results are bit-identical across runs and thread counts.
class DijkstraRunner {
 public:
  DijkstraRunner(const CostField& field, const RegionMask& region,
                 const ScanConfig& cfg, int x0, int x1, int y0, int y1,
                 const RegionMask* sinks)
      : field_(field),
        region_(region),
        sinks_(sinks),
        x0_(x0),
        x1_(x1),
        y0_(y0),
        y1_(y1),
        vMax_(cfg.vMax),
        codes_(1 + 2 * cfg.vMax),
        nx_(x1 - x0 + 1),
        ny_(y1 - y0 + 1) {
    size_t n = size_t(nx_) * ny_ * codes_;
    dist_.assign(n, kInf);
    pred_.assign(n, -1);
    settled_.assign(n, 0);
  }

  bool enterable(int x, int y) const {
    if (x < x0_ || x > x1_ || y < y0_ || y > y1_) return false;
    if (region_.test(x, y)) return true;
    return sinks_ && sinks_->test(x, y);
  }

  int32_t state_index(int x, int y, int code) const {
    return int32_t((size_t(y - y0_) * nx_ + size_t(x - x0_)) * codes_ + size_t(code));
  }
  Pixel state_pixel(int32_t s) const {
    int cell = int(s / codes_);
    return Pixel{x0_ + cell % nx_, y0_ + cell / nx_};
  }
  int state_code(int32_t s) const { return int(s % codes_); }

  /// Runs from `start`; when `target` is set, stops at the first settled
  /// state on that pixel (which realizes the pixel's minimal cost) and
  /// returns it. Returns -1 when the target is unreachable or absent.
  int32_t run(const Pixel& start, const Pixel* target) {
    const int32_t s0 = state_index(start.x, start.y, 0);
    dist_[size_t(s0)] = entry_cost(field_, start);

    std::priority_queue<HeapEntry, std::vector<HeapEntry>, HeapCmp> heap;
    heap.push({dist_[size_t(s0)], tie_key(start.x, start.y, 0), s0});

    while (!heap.empty()) {
      HeapEntry top = heap.top();
      heap.pop();
      if (settled_[size_t(top.state)]) continue;
      settled_[size_t(top.state)] = 1;

      const Pixel p = state_pixel(top.state);
      if (target && p == *target) return top.state;
      // Sink pixels terminate paths; only the start may be expanded from.
      if (sinks_ && sinks_->test(p.x, p.y) && !(p == start)) continue;

      const int code = state_code(top.state);
      const double base = top.cost;

      auto relax = [&](int nx, int ny, int ncode, double w) {
        int32_t ns = state_index(nx, ny, ncode);
        double cand = base + w;
        if (cand < dist_[size_t(ns)]) {
          dist_[size_t(ns)] = cand;
          pred_[size_t(ns)] = top.state;
          heap.push({cand, tie_key(nx, ny, ncode), ns});
        }
      };

      // Rightward moves reset the vertical run.
      for (int dy = -1; dy <= 1; ++dy) {
        int nx = p.x + 1, ny = p.y + dy;
        if (enterable(nx, ny)) relax(nx, ny, 0, field_.cell_cost(nx, ny));
      }
      // Vertical moves extend or open a run; reversals are forbidden.
      if (vMax_ > 0) {
        int run = code == 0 ? 0 : (code + 1) / 2;
        bool up = code != 0 && (code % 2 == 1);
        if ((code == 0 || up) && run < vMax_ && enterable(p.x, p.y - 1))
          relax(p.x, p.y - 1, 2 * (run + 1) - 1,
                field_.cell_cost(p.x, p.y - 1) * field_.verticalPenalty);
        if ((code == 0 || !up) && run < vMax_ && enterable(p.x, p.y + 1))
          relax(p.x, p.y + 1, 2 * (run + 1),
                field_.cell_cost(p.x, p.y + 1) * field_.verticalPenalty);
      }
    }
    return -1;
  }

  void move_into(SingleSourceResult& out, const Pixel& source) {
    out.source_ = source;
    out.x0_ = x0_;
    out.y0_ = y0_;
    out.nx_ = nx_;
    out.ny_ = ny_;
    out.codes_ = codes_;
    out.dist_ = std::move(dist_);
    out.pred_ = std::move(pred_);
  }

 private:
  const CostField& field_;
  const RegionMask& region_;
  const RegionMask* sinks_;
  int x0_, x1_, y0_, y1_;
  int vMax_, codes_, nx_, ny_;
  std::vector<double> dist_;
  std::vector<int32_t> pred_;
  std::vector<uint8_t> settled_;
};

namespace {

struct StateWindow {
  int x0 = 0, x1 = -1, y0 = 0, y1 = -1;
  bool empty() const { return x1 < x0 || y1 < y0; }
  void include(int x, int y) {
    if (empty()) {
      x0 = x1 = x;
      y0 = y1 = y;
      return;
    }
    x0 = std::min(x0, x);
    x1 = std::max(x1, x);
    y0 = std::min(y0, y);
    y1 = std::max(y1, y);
  }
};

StateWindow window_of(const RegionMask& region, int xLo, int xHi,
                      const RegionMask* sinks) {
  StateWindow w;
  for (int y = 0; y < region.height; ++y)
    for (int x = std::max(0, xLo); x <= std::min(region.width - 1, xHi); ++x) {
      if (region.at(x, y) || (sinks && sinks->at(x, y))) w.include(x, y);
    }
  return w;
}

}  // namespace

double SingleSourceResult::cost_at(const Pixel& p) const {
  if (p.x < x0_ || p.x >= x0_ + nx_ || p.y < y0_ || p.y >= y0_ + ny_) return kInf;
  double best = kInf;
  size_t cell = (size_t(p.y - y0_) * nx_ + size_t(p.x - x0_)) * codes_;
  for (int c = 0; c < codes_; ++c) best = std::min(best, dist_[cell + c]);
  return best;
}

std::vector<Pixel> SingleSourceResult::path_to(const Pixel& p) const {
  std::vector<Pixel> path;
  if (p.x < x0_ || p.x >= x0_ + nx_ || p.y < y0_ || p.y >= y0_ + ny_) return path;
  size_t cell = (size_t(p.y - y0_) * nx_ + size_t(p.x - x0_)) * codes_;
  int32_t best = -1;
  double bestCost = kInf;
  for (int c = 0; c < codes_; ++c)
    if (dist_[cell + c] < bestCost) {
      bestCost = dist_[cell + c];
      best = int32_t(cell + c);
    }
  if (best < 0) return path;
  for (int32_t s = best; s >= 0; s = pred_[size_t(s)]) {
    int cellIdx = int(s / codes_);
    path.push_back(Pixel{x0_ + cellIdx % nx_, y0_ + cellIdx / nx_});
  }
  std::reverse(path.begin(), path.end());
  return path;
}

std::optional<BoundaryPath> best_path_pair(const CostField& field,
                                           const RegionMask& region,
                                           const Pixel& s, const Pixel& e,
                                           const ScanConfig& cfg) {
  cfg.validate();
  if (!region.test(s.x, s.y))
    throw std::invalid_argument("best_path_pair: start outside the legal region");
  if (!region.test(e.x, e.y)) return std::nullopt;  // unreachable by definition
  if (e.x <= s.x) return std::nullopt;              // paths only run rightward

  StateWindow w = window_of(region, s.x, e.x, nullptr);
  if (w.empty()) return std::nullopt;
  DijkstraRunner runner(field, region, cfg, s.x, e.x, w.y0, w.y1, nullptr);
  int32_t hit = runner.run(s, &e);
  if (hit < 0) return std::nullopt;

  SingleSourceResult sweep;
  runner.move_into(sweep, s);
  BoundaryPath path;
  path.points = sweep.path_to(e);
  path.rawCost = sweep.cost_at(e);
  path.normalizedCost = path.rawCost / double(e.x - s.x);
  return path;
}

SingleSourceResult single_source(const CostField& field, const RegionMask& region,
                                 const Pixel& s, const ScanConfig& cfg,
                                 const RegionMask* sinks) {
  cfg.validate();
  if (!region.test(s.x, s.y))
    throw std::invalid_argument("single_source: start outside the legal region");

  StateWindow w = window_of(region, s.x, region.width - 1, sinks);
  w.include(s.x, s.y);
  DijkstraRunner runner(field, region, cfg, s.x, w.x1, w.y0, w.y1, sinks);
  runner.run(s, nullptr);
  SingleSourceResult out;
  runner.move_into(out, s);
  return out;
}

std::optional<double> mean_vertical_distance(const BoundaryPath& a,
                                             const BoundaryPath& b) {
  if (a.points.empty() || b.points.empty()) return std::nullopt;
  auto columns = [](const BoundaryPath& p, int& x0, std::vector<double>& meanY) {
    x0 = p.points.front().x;
    int x1 = p.points.back().x;
    std::vector<double> sum(size_t(x1 - x0 + 1), 0.0);
    std::vector<int> cnt(size_t(x1 - x0 + 1), 0);
    for (const Pixel& q : p.points) {
      sum[size_t(q.x - x0)] += q.y;
      cnt[size_t(q.x - x0)] += 1;
    }
    meanY.resize(sum.size());
    for (size_t i = 0; i < sum.size(); ++i) meanY[i] = sum[i] / cnt[i];
  };
  int ax0 = 0, bx0 = 0;
  std::vector<double> ay, by;
  columns(a, ax0, ay);
  columns(b, bx0, by);
  int lo = std::max(ax0, bx0);
  int hi = std::min(ax0 + int(ay.size()) - 1, bx0 + int(by.size()) - 1);
  if (hi < lo) return std::nullopt;
  double acc = 0.0;
  for (int x = lo; x <= hi; ++x)
    acc += std::abs(ay[size_t(x - ax0)] - by[size_t(x - bx0)]);
  return acc / double(hi - lo + 1);
}

std::vector<BoundaryPath> select_phases(const std::vector<BoundaryPath>& sorted,
                                        double thresholdK, double suppressionDist) {
  std::vector<BoundaryPath> accepted;
  if (sorted.empty()) return accepted;
  const double limit = thresholdK * sorted.front().normalizedCost;
  for (const BoundaryPath& cand : sorted) {
    if (cand.normalizedCost > limit) break;
    bool suppressed = false;
    for (const BoundaryPath& a : accepted) {
      auto d = mean_vertical_distance(cand, a);
      if (d && *d < suppressionDist) {
        suppressed = true;
        break;
      }
    }
    if (!suppressed) accepted.push_back(cand);
  }
  return accepted;
}

namespace {

struct Candidate {
  BoundaryPath path;
  int sIndex = 0;
  int eIndex = 0;
};

void finish_scan(ScanResult& out, std::vector<Candidate>&& cands,
                 const VesselGeometry& geom, const ScanConfig& cfg) {
  // Equal normalized costs happen a lot on saturated cost fields; prefer
  // the widest span then (the same bias the normalization itself encodes),
  // then contour order for determinism.
  auto span = [](const Candidate& c) {
    return c.path.points.back().x - c.path.points.front().x;
  };
  std::sort(cands.begin(), cands.end(), [&](const Candidate& a, const Candidate& b) {
    if (a.path.normalizedCost != b.path.normalizedCost)
      return a.path.normalizedCost < b.path.normalizedCost;
    if (span(a) != span(b)) return span(a) > span(b);
    if (a.sIndex != b.sIndex) return a.sIndex < b.sIndex;
    return a.eIndex < b.eIndex;
  });
  std::vector<BoundaryPath> sorted;
  sorted.reserve(cands.size());
  for (Candidate& c : cands) sorted.push_back(std::move(c.path));
  out.phases = select_phases(sorted, cfg.phaseThresholdK,
                             resolved_suppression_dist(cfg, geom));
  if (!out.phases.empty()) out.bestPath = out.phases.front();
}

void check_dims(const VesselGeometry& geom, const CostField& field) {
  if (geom.width != field.width || geom.height != field.height)
    throw std::invalid_argument("scan: cost field and geometry dimensions differ");
  if (geom.width < 3 || geom.height < 3)
    throw std::invalid_argument("scan: image must be at least 3x3");
}

}  // namespace

ScanResult scan_simple(const VesselGeometry& geom, const CostField& field,
                       const ScanConfig& cfg, int threads) {
  cfg.validate();
  check_dims(geom, field);
  const std::vector<EndpointPair> pairs = enumerate_endpoint_pairs(geom, cfg);

  ScanResult out;
  out.pairsEvaluated = pairs.size();
  std::vector<std::optional<BoundaryPath>> found(pairs.size());
  detail::parallel_for(pairs.size(), threads, [&](size_t i) {
    const EndpointPair& pr = pairs[i];
    RegionMask region = pair_legal_region(geom, pr.s, pr.e, cfg);
    found[i] = best_path_pair(field, region, pr.s, pr.e, cfg);
  });

  std::vector<Candidate> cands;
  for (size_t i = 0; i < pairs.size(); ++i)
    if (found[i])
      cands.push_back({std::move(*found[i]), pairs[i].sIndex, pairs[i].eIndex});
  finish_scan(out, std::move(cands), geom, cfg);
  return out;
}

ScanResult scan_fast(const VesselGeometry& geom, const CostField& field,
                     const ScanConfig& cfg, int threads) {
  cfg.validate();
  check_dims(geom, field);
  const std::vector<EndpointPair> pairs = enumerate_endpoint_pairs(geom, cfg);

  ScanResult out;
  out.pairsEvaluated = pairs.size();

  // Pairs arrive sorted by sIndex, so each start point is one contiguous group.
  std::vector<std::pair<size_t, size_t>> groups;
  for (size_t i = 0; i < pairs.size();) {
    size_t j = i;
    while (j < pairs.size() && pairs[j].sIndex == pairs[i].sIndex) ++j;
    groups.emplace_back(i, j);
    i = j;
  }

  // Pass 1: one relaxed sweep per start point; reconstruct every admissible
  // endpoint's path. Results are keyed by pair index, so threading cannot
  // change them.
  struct Relaxed {
    bool reachable = false;
    BoundaryPath path;
  };
  std::vector<Relaxed> relaxed(pairs.size());
  const PathConstraints sweepConstraints(geom, cfg);
  detail::parallel_for(groups.size(), threads, [&](size_t gi) {
    auto [gBegin, gEnd] = groups[gi];
    const Pixel start = pairs[gBegin].s;
    RegionMask sinks(geom.width, geom.height);
    std::vector<int> sinkCols;
    for (size_t i = gBegin; i < gEnd; ++i) {
      sinks.at(pairs[i].e.x, pairs[i].e.y) = 1;
      sinkCols.push_back(pairs[i].e.x);
    }
    std::sort(sinkCols.begin(), sinkCols.end());

    // Sweep region: the S-side filters with the flat rule capped by the
    // distance to the next candidate endpoint column, so it contains every
    // admissible pair region.
    RegionMask region(geom.width, geom.height);
    region.at(start.x, start.y) = 1;
    const int y0 = std::max(0, geom.yMin), y1 = std::min(geom.height - 1, geom.yMax);
    for (int x = start.x; x <= geom.xMax; ++x) {
      auto it = std::lower_bound(sinkCols.begin(), sinkCols.end(), x);
      int dxSink = it == sinkCols.end() ? -1 : *it - x;
      for (int y = y0; y <= y1; ++y)
        if (sweepConstraints.sweep_legal(start, x, y, dxSink)) region.at(x, y) = 1;
    }

    SingleSourceResult sweep = single_source(field, region, start, cfg, &sinks);
    for (size_t i = gBegin; i < gEnd; ++i) {
      const Pixel& e = pairs[i].e;
      double c = sweep.cost_at(e);
      if (!std::isfinite(c)) continue;
      Relaxed& r = relaxed[i];
      r.reachable = true;
      r.path.points = sweep.path_to(e);
      r.path.rawCost = c;
      r.path.normalizedCost = c / double(pairs[i].dx);
    }
  });

  // Pass 2: deterministic verification in relaxed-cost order. A sweep path
  // that stays inside the exact pair region realizes the pair optimum; one
  // that does not triggers a recomputation on the pair region. Pairs whose
  // relaxed bound exceeds the phase threshold of the incumbent can never be
  // selected and are skipped.
  std::vector<size_t> order;
  order.reserve(pairs.size());
  for (size_t i = 0; i < pairs.size(); ++i)
    if (relaxed[i].reachable) order.push_back(i);
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    double ca = relaxed[a].path.normalizedCost, cb = relaxed[b].path.normalizedCost;
    if (ca != cb) return ca < cb;
    if (pairs[a].dx != pairs[b].dx) return pairs[a].dx > pairs[b].dx;
    if (pairs[a].sIndex != pairs[b].sIndex) return pairs[a].sIndex < pairs[b].sIndex;
    return pairs[a].eIndex < pairs[b].eIndex;
  });

  const PathConstraints pc(geom, cfg);
  double incumbent = kInf;
  std::vector<Candidate> cands;
  for (size_t idx : order) {
    const EndpointPair& pr = pairs[idx];
    Relaxed& r = relaxed[idx];
    if (std::isfinite(incumbent) &&
        r.path.normalizedCost > cfg.phaseThresholdK * incumbent)
      break;

    bool legal = true;
    for (const Pixel& p : r.path.points)
      if (!pc.pair_legal(pr.s, pr.e, p.x, p.y)) {
        legal = false;
        break;
      }

    std::optional<BoundaryPath> final;
    if (legal) {
      final = std::move(r.path);
    } else {
      ++out.pairsRecomputed;
      RegionMask region = pair_legal_region(geom, pr.s, pr.e, cfg);
      final = best_path_pair(field, region, pr.s, pr.e, cfg);
    }
    if (final) {
      incumbent = std::min(incumbent, final->normalizedCost);
      cands.push_back({std::move(*final), pr.sIndex, pr.eIndex});
    }
  }
  finish_scan(out, std::move(cands), geom, cfg);
  return out;
}

}  // namespace vtrace
