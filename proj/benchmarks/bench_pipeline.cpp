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

#include <benchmark/benchmark.h>

#include "vesseltrace/pipeline.hpp"
#include "vesseltrace/synthetic.hpp"

using namespace vtrace;

namespace {

SyntheticCase make_case(int size) {
  SyntheticSpec spec;
  spec.width = size;
  spec.height = size;
  spec.levelFrac = 0.55;
  spec.contrast = 0.75;
  spec.seed = 7;
  return generate_synthetic(spec);
}

void BM_Canny(benchmark::State& state) {
  SyntheticCase c = make_case(int(state.range(0)));
  ScanConfig cfg;
  for (auto _ : state)
    benchmark::DoNotOptimize(canny(c.image, cfg.cannyLow, cfg.cannyHigh, cfg.cannySigma));
}
BENCHMARK(BM_Canny)->Arg(128)->Arg(256);

void BM_CostField(benchmark::State& state) {
  SyntheticCase c = make_case(128);
  VesselGeometry geom = from_interior_mask(c.interior);
  ScanConfig cfg;
  cfg.indicator = Indicator(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(prepare_cost_field(c.image, geom, cfg));
}
BENCHMARK(BM_CostField)->DenseRange(0, 3);

void BM_SingleSourceSweep(benchmark::State& state) {
  SyntheticCase c = make_case(int(state.range(0)));
  VesselGeometry geom = from_interior_mask(c.interior);
  ScanConfig cfg;
  PreparedField field = prepare_cost_field(c.image, geom, cfg);
  auto pairs = enumerate_endpoint_pairs(geom, cfg);
  RegionMask region = source_legal_region(geom, pairs.front().s, cfg);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        single_source(field.field, region, pairs.front().s, cfg));
}
BENCHMARK(BM_SingleSourceSweep)->Arg(128)->Arg(256);

void BM_ScanFast(benchmark::State& state) {
  SyntheticCase c = make_case(int(state.range(0)));
  VesselGeometry geom = from_interior_mask(c.interior);
  ScanConfig cfg;
  PreparedField field = prepare_cost_field(c.image, geom, cfg);
  for (auto _ : state)
    benchmark::DoNotOptimize(scan_fast(geom, field.field, cfg, 0));
}
BENCHMARK(BM_ScanFast)->Arg(96)->Arg(128)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_ScanSimple(benchmark::State& state) {
  SyntheticCase c = make_case(int(state.range(0)));
  VesselGeometry geom = from_interior_mask(c.interior);
  ScanConfig cfg;
  PreparedField field = prepare_cost_field(c.image, geom, cfg);
  for (auto _ : state)
    benchmark::DoNotOptimize(scan_simple(geom, field.field, cfg, 0));
}
BENCHMARK(BM_ScanSimple)->Arg(96)->Arg(128)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
