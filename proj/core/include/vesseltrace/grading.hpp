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

#include <array>
#include <string>
#include <vector>

#include "vesseltrace/pipeline.hpp"
#include "vesseltrace/synthetic.hpp"

namespace vtrace {

/// Five-level agreement between a traced path and the ground truth.
enum class MatchLevel { Full = 0, Good = 1, Partial = 2, Low = 3, Miss = 4 };

std::string match_level_name(MatchLevel level);

struct MatchGrade {
  MatchLevel level = MatchLevel::Miss;
  double overlapFraction = 0.0;  // f, per-column recall within tau
};

/// f = fraction of ground-truth columns where some traced point lies
/// within tau pixels vertically of a ground-truth point in that column.
/// Levels: f >= 0.98 Full, >= 0.90 Good, >= 0.50 Partial, > 0 Low, else
/// Miss. Throws std::invalid_argument for empty paths.
MatchGrade grade_match(const BoundaryPath& found, const BoundaryPath& gt, double tau);

/// One benchmark table row: the outcome distribution of a single indicator
/// over a spec set.
struct IndicatorResult {
  Indicator indicator = Indicator::Intensity;
  int cases = 0;
  std::array<int, 5> levelCounts{};  // indexed by MatchLevel
  std::vector<MatchLevel> perCase;   // in spec order

  double level_pct(MatchLevel l) const;
  double true_pct() const;   // Full + Good
  double false_pct() const;  // the rest
};

struct BenchmarkReport {
  std::vector<IndicatorResult> rows;  // in the order the configs were given
};

/// Runs the tracing pipeline over every (config x spec) cell and grades
/// the best path against the generated ground truth (no path found counts
/// as a complete miss). Throws std::invalid_argument for empty inputs.
BenchmarkReport run_benchmark(const std::vector<SyntheticSpec>& specs,
                              const std::vector<ScanConfig>& configs,
                              int threads = 0);

/// The four canonical indicator variants of `base`, in benchmark row
/// order: intensity, relative intensity, edge density, edge.
std::vector<ScanConfig> benchmark_indicator_configs(const ScanConfig& base);

/// Aligned-text table in the row layout of the indicator comparison:
/// True / False / per-level percentages / indicator description.
std::string format_report_table(const BenchmarkReport& report);

}  // namespace vtrace
