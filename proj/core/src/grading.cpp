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

#include "vesseltrace/grading.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>

#include "vesseltrace/detail/parallel.hpp"

namespace vtrace {

std::string match_level_name(MatchLevel level) {
  switch (level) {
    case MatchLevel::Full: return "full";
    case MatchLevel::Good: return "good";
    case MatchLevel::Partial: return "partial";
    case MatchLevel::Low: return "low";
    case MatchLevel::Miss: return "miss";
  }
  return "?";
}

MatchGrade grade_match(const BoundaryPath& found, const BoundaryPath& gt, double tau) {
  if (found.points.empty() || gt.points.empty())
    throw std::invalid_argument("grade_match: empty path");
  if (tau < 0.0) throw std::invalid_argument("grade_match: tau must be >= 0");

  // Column -> y list, for both paths. Paths may hold several points per
  // column (vertical runs); a column matches when any pairing is close.
  std::map<int, std::vector<int>> foundCols;
  for (const Pixel& p : found.points) foundCols[p.x].push_back(p.y);

  std::map<int, std::vector<int>> gtCols;
  for (const Pixel& p : gt.points) gtCols[p.x].push_back(p.y);

  int matched = 0;
  for (const auto& [x, gys] : gtCols) {
    auto it = foundCols.find(x);
    if (it == foundCols.end()) continue;
    bool hit = false;
    for (int gy : gys) {
      for (int fy : it->second)
        if (std::abs(fy - gy) <= tau) {
          hit = true;
          break;
        }
      if (hit) break;
    }
    matched += hit;
  }

  MatchGrade grade;
  grade.overlapFraction = double(matched) / double(gtCols.size());
  const double f = grade.overlapFraction;
  if (f >= 0.98)
    grade.level = MatchLevel::Full;
  else if (f >= 0.90)
    grade.level = MatchLevel::Good;
  else if (f >= 0.50)
    grade.level = MatchLevel::Partial;
  else if (f > 0.0)
    grade.level = MatchLevel::Low;
  else
    grade.level = MatchLevel::Miss;
  return grade;
}

double IndicatorResult::level_pct(MatchLevel l) const {
  if (cases == 0) return 0.0;
  return 100.0 * double(levelCounts[size_t(l)]) / double(cases);
}

double IndicatorResult::true_pct() const {
  if (cases == 0) return 0.0;
  return 100.0 *
         double(levelCounts[size_t(MatchLevel::Full)] +
                levelCounts[size_t(MatchLevel::Good)]) /
         double(cases);
}

double IndicatorResult::false_pct() const { return 100.0 - true_pct(); }

std::vector<ScanConfig> benchmark_indicator_configs(const ScanConfig& base) {
  std::vector<ScanConfig> configs(4, base);
  configs[0].indicator = Indicator::Intensity;
  configs[1].indicator = Indicator::RelativeIntensity;
  configs[2].indicator = Indicator::EdgeDensity;
  configs[3].indicator = Indicator::Edge;
  return configs;
}

BenchmarkReport run_benchmark(const std::vector<SyntheticSpec>& specs,
                              const std::vector<ScanConfig>& configs,
                              int threads) {
  if (specs.empty()) throw std::invalid_argument("run_benchmark: no specs");
  if (configs.empty()) throw std::invalid_argument("run_benchmark: no configs");

  const size_t cells = specs.size() * configs.size();
  std::vector<MatchLevel> levels(cells, MatchLevel::Miss);
  detail::parallel_for(cells, threads, [&](size_t cell) {
    const size_t ci = cell / specs.size();
    const size_t si = cell % specs.size();
    SyntheticCase c = generate_synthetic(specs[si]);
    VesselGeometry geom = from_interior_mask(c.interior);
    ScanResult result = trace_boundaries(c.image, geom, configs[ci], {false, 1});
    if (result.bestPath)
      levels[cell] =
          grade_match(*result.bestPath, c.groundTruth, configs[ci].tau).level;
  });

  BenchmarkReport report;
  for (size_t ci = 0; ci < configs.size(); ++ci) {
    IndicatorResult row;
    row.indicator = configs[ci].indicator;
    row.cases = int(specs.size());
    for (size_t si = 0; si < specs.size(); ++si) {
      MatchLevel l = levels[ci * specs.size() + si];
      row.perCase.push_back(l);
      row.levelCounts[size_t(l)] += 1;
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

namespace {

const char* indicator_description(Indicator ind) {
  switch (ind) {
    case Indicator::Intensity: return "intensity change across the curve";
    case Indicator::RelativeIntensity: return "relative intensity change across the curve";
    case Indicator::EdgeDensity: return "edge density difference, on vs around the curve";
    case Indicator::Edge: return "edge overlap along the curve";
  }
  return "?";
}

}  // namespace

std::string format_report_table(const BenchmarkReport& report) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof line, "%-5s %-6s %-7s %-6s %-6s %-8s %-5s %-6s %s\n",
                "Case", "True", "False", "Full", "Good", "Partial", "Low", "Miss",
                "Indicator description");
  out += line;
  for (size_t i = 0; i < report.rows.size(); ++i) {
    const IndicatorResult& r = report.rows[i];
    std::snprintf(line, sizeof line,
                  "%-5zu %-6.0f %-7.0f %-6.0f %-6.0f %-8.0f %-5.0f %-6.0f %s\n",
                  i + 1, r.true_pct(), r.false_pct(), r.level_pct(MatchLevel::Full),
                  r.level_pct(MatchLevel::Good), r.level_pct(MatchLevel::Partial),
                  r.level_pct(MatchLevel::Low), r.level_pct(MatchLevel::Miss),
                  indicator_description(r.indicator));
    out += line;
  }
  return out;
}

}  // namespace vtrace
