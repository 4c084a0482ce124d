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

// vessel-trace: trace material boundaries in transparent vessels.
//
//   trace  - run the tracing pipeline on one image + vessel mask/contour
//   synth  - generate synthetic image/mask/ground-truth triples
//   bench  - grade the four indicators over a synthetic dataset
//
// Exit codes: 0 success, 1 invalid input, 2 trace found no path.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "vesseltrace/grading.hpp"
#include "vesseltrace/image_io.hpp"
#include "vesseltrace/pipeline.hpp"
#include "vesseltrace/synthetic.hpp"

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;
using namespace vtrace;

namespace {

// Serialized floating-point values are rounded to 9 significant digits so
// byte-identical output survives reruns and thread-count changes.
double sig9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return std::strtod(buf, nullptr);
}

[[noreturn]] void fail(const std::string& code, const std::string& message) {
  std::cerr << "vessel-trace: error: " << code << ": " << message << "\n";
  std::exit(1);
}

struct ConfigFlags {
  ScanConfig cfg;
  bool indicatorGiven = false;
  void attach(CLI::App* cmd) {
    cmd->add_option("--theta", cfg.thetaMaxDeg, "Endpoint line angle limit, degrees")
        ->capture_default_str();
    cmd->add_option("--phi", cfg.phiMaxDeg, "Point-to-endpoint cone limit, degrees")
        ->capture_default_str();
    cmd->add_option("--min-length-frac", cfg.minLengthFrac,
                    "Minimal horizontal span as a fraction of the average width")
        ->capture_default_str();
    cmd->add_option("--vmax", cfg.vMax, "Max consecutive vertical moves")
        ->capture_default_str();
    cmd->add_option("--vertical-penalty", cfg.verticalPenalty,
                    "Cost multiplier for vertical moves")
        ->capture_default_str();
    cmd->add_option("--penalty-factor", cfg.penaltyFactor,
                    "Cost multiplier inside the boundary penalty zone")
        ->capture_default_str();
    cmd->add_option("--penalty-radius", cfg.penaltyRadius,
                    "Penalty zone radius in px (negative = auto)");
    cmd->add_option("--top-frac", cfg.topFrac, "Excluded band at the vessel top")
        ->capture_default_str();
    cmd->add_option("--bottom-frac", cfg.bottomFrac, "Excluded band at the vessel bottom")
        ->capture_default_str();
    cmd->add_option("--flat-d", cfg.flatD, "Flat-path minimal distance (negative = auto)");
    std::string indicator = indicator_name(cfg.indicator);
    cmd->add_option_function<std::string>(
           "--indicator",
           [this](const std::string& v) {
             cfg.indicator = parse_indicator(v);
             indicatorGiven = true;
           },
           "intensity | relative-intensity | edge | edge-density")
        ->default_str(indicator);
    cmd->add_option("--cost-c", cfg.costC, "Cost constant C")->capture_default_str();
    cmd->add_option("--normal-offset", cfg.normalOffset,
                    "Half-gap d of the vertical intensity probe")
        ->capture_default_str();
    cmd->add_option("--phase-k", cfg.phaseThresholdK,
                    "Multi-phase acceptance threshold over the best cost")
        ->capture_default_str();
    cmd->add_option("--suppression-dist", cfg.suppressionDist,
                    "Near-duplicate suppression distance (negative = auto)");
    cmd->add_option("--tau", cfg.tau, "Grading tolerance in px")->capture_default_str();
    cmd->add_option("--canny-sigma", cfg.cannySigma, "Canny smoothing sigma")
        ->capture_default_str();
    cmd->add_option("--canny-low", cfg.cannyLow,
                    "Canny low threshold, fraction of the max gradient")
        ->capture_default_str();
    cmd->add_option("--canny-high", cfg.cannyHigh,
                    "Canny high threshold, fraction of the max gradient")
        ->capture_default_str();
  }
};

json config_json(const ScanConfig& cfg, const VesselGeometry& geom) {
  json j;
  j["theta"] = sig9(cfg.thetaMaxDeg);
  j["phi"] = sig9(cfg.phiMaxDeg);
  j["minLengthFrac"] = sig9(cfg.minLengthFrac);
  j["vMax"] = cfg.vMax;
  j["verticalPenalty"] = sig9(cfg.verticalPenalty);
  j["penaltyFactor"] = sig9(cfg.penaltyFactor);
  j["penaltyRadius"] = sig9(resolved_penalty_radius(cfg, geom));
  j["topFrac"] = sig9(cfg.topFrac);
  j["bottomFrac"] = sig9(cfg.bottomFrac);
  j["flatD"] = sig9(resolved_flat_d(cfg, geom));
  j["indicator"] = indicator_name(cfg.indicator);
  j["costC"] = sig9(cfg.costC);
  j["normalOffset"] = cfg.normalOffset;
  j["densityWindow"] = {cfg.densityStripWidth, cfg.densityStripHeight, cfg.densityOffset};
  j["phaseThresholdK"] = sig9(cfg.phaseThresholdK);
  j["suppressionDist"] = sig9(resolved_suppression_dist(cfg, geom));
  j["tau"] = sig9(cfg.tau);
  j["cannySigma"] = sig9(cfg.cannySigma);
  j["cannyLow"] = sig9(cfg.cannyLow);
  j["cannyHigh"] = sig9(cfg.cannyHigh);
  return j;
}

json path_json(const BoundaryPath& p) {
  json points = json::array();
  for (const Pixel& q : p.points) points.push_back({q.x, q.y});
  json j;
  j["points"] = std::move(points);
  j["rawCost"] = sig9(p.rawCost);
  j["normalizedCost"] = sig9(p.normalizedCost);
  return j;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail("io-error", "cannot write " + path.string());
  out << text;
}

RegionMask mask_from_image(const GrayImage& img) {
  RegionMask mask(img.width, img.height);
  for (size_t i = 0; i < img.data.size(); ++i) mask.data[i] = img.data[i] > 0.0 ? 1 : 0;
  return mask;
}

std::vector<Pixel> contour_from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("io-error", "cannot read " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    fail("bad-input", std::string("contour json: ") + e.what());
  }
  std::vector<Pixel> points;
  if (!j.is_array()) fail("bad-input", "contour json must be an array of [x,y] pairs");
  for (const auto& item : j) {
    if (!item.is_array() || item.size() != 2 || !item[0].is_number_integer() ||
        !item[1].is_number_integer())
      fail("bad-input", "contour json must be an array of [x,y] integer pairs");
    points.push_back({item[0].get<int>(), item[1].get<int>()});
  }
  return points;
}

// ---------------------------------------------------------------------------
// trace
// ---------------------------------------------------------------------------

struct TraceArgs {
  std::string imagePath;
  std::string maskPath;
  std::string contourPath;
  std::string outJson;
  std::string outOverlay;
  std::string dumpCost;
  std::string dumpEdges;
  int downscaleFactor = 1;
  bool simple = false;
  bool timing = false;
  int threads = 0;
  ConfigFlags flags;
};

int run_trace(const TraceArgs& args) {
  if (args.maskPath.empty() == args.contourPath.empty())
    fail("invalid-arguments", "trace needs exactly one of --mask or --contour-json");
  try {
    args.flags.cfg.validate();
  } catch (const std::invalid_argument& e) {
    fail("invalid-arguments", e.what());
  }

  GrayImage image;
  try {
    image = load_image(args.imagePath);
  } catch (const ImageIoError& e) {
    fail("io-error", e.what());
  }

  VesselGeometry geom;
  try {
    if (!args.maskPath.empty()) {
      GrayImage maskImg = load_image(args.maskPath);
      if (args.downscaleFactor > 1) {
        image = downscale(image, args.downscaleFactor);
        maskImg = downscale(maskImg, args.downscaleFactor);
        for (double& v : maskImg.data) v = v >= 0.5 ? 1.0 : 0.0;
      }
      geom = from_interior_mask(mask_from_image(maskImg));
    } else {
      if (args.downscaleFactor > 1)
        fail("invalid-arguments", "--downscale cannot be combined with --contour-json");
      geom = from_contour_points(contour_from_json_file(args.contourPath),
                                 image.width, image.height);
    }
  } catch (const ImageIoError& e) {
    fail("io-error", e.what());
  } catch (const VesselError& e) {
    fail("bad-input", e.what());
  }
  if (geom.width != image.width || geom.height != image.height)
    fail("bad-input", "image and vessel dimensions differ");

  const ScanConfig& cfg = args.flags.cfg;
  auto started = std::chrono::steady_clock::now();
  PreparedField prepared = prepare_cost_field(image, geom, cfg);
  ScanResult result = args.simple
                          ? scan_simple(geom, prepared.field, cfg, args.threads)
                          : scan_fast(geom, prepared.field, cfg, args.threads);
  auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - started)
                     .count();

  if (!args.dumpCost.empty()) {
    double maxCost = 0.0;
    for (double c : prepared.field.perPixelCost) maxCost = std::max(maxCost, c);
    save_pgm16(prepared.field.perPixelCost, prepared.field.width,
               prepared.field.height, maxCost, args.dumpCost);
  }
  if (!args.dumpEdges.empty() && prepared.edges)
    save_pgm(prepared.edges->to_gray(), args.dumpEdges);

  json out;
  out["paths"] = json::array();
  for (const BoundaryPath& p : result.phases) out["paths"].push_back(path_json(p));
  out["config"] = config_json(cfg, geom);
  out["stats"] = json::object();
  out["stats"]["pairsEvaluated"] = result.pairsEvaluated;
  out["stats"]["pairsRecomputed"] = result.pairsRecomputed;
  if (args.timing) out["stats"]["elapsedMs"] = elapsed;

  if (!args.outJson.empty()) write_text(args.outJson, out.dump(2) + "\n");

  if (!args.outOverlay.empty()) {
    std::vector<std::vector<Pixel>> curves;
    for (const BoundaryPath& p : result.phases) curves.push_back(p.points);
    save_png(render_overlay(image, curves, geom.contour), args.outOverlay);
  }

  if (args.outJson.empty() && args.outOverlay.empty())
    std::cout << out.dump(2) << "\n";

  return result.bestPath ? 0 : 2;
}

// ---------------------------------------------------------------------------
// synth
// ---------------------------------------------------------------------------

struct SynthArgs {
  int count = 0;
  uint32_t seed = 1;
  std::string outdir;
  int width = 96;
  int height = 96;
  double contrast = 0.8;
  double noiseSigma = 0.0;
  double speckleDensity = 0.0;
};

json spec_json(const SyntheticSpec& s) {
  json j;
  j["width"] = s.width;
  j["height"] = s.height;
  j["silhouette"] = silhouette_name(s.silhouette);
  j["boundary"] = boundary_shape_name(s.boundary);
  j["levelFrac"] = sig9(s.levelFrac);
  j["slantDeg"] = sig9(s.slantDeg);
  j["sineAmplitude"] = sig9(s.sineAmplitude);
  j["sinePeriod"] = sig9(s.sinePeriod);
  j["stepHeight"] = sig9(s.stepHeight);
  j["stepPosFrac"] = sig9(s.stepPosFrac);
  j["contrast"] = sig9(s.contrast);
  j["noiseSigma"] = sig9(s.noiseSigma);
  j["speckleDensity"] = sig9(s.speckleDensity);
  j["seed"] = s.seed;
  return j;
}

SyntheticSpec spec_from_json(const json& j) {
  SyntheticSpec s;
  s.width = j.at("width").get<int>();
  s.height = j.at("height").get<int>();
  s.silhouette = parse_silhouette(j.at("silhouette").get<std::string>());
  s.boundary = parse_boundary_shape(j.at("boundary").get<std::string>());
  s.levelFrac = j.at("levelFrac").get<double>();
  s.slantDeg = j.at("slantDeg").get<double>();
  s.sineAmplitude = j.at("sineAmplitude").get<double>();
  s.sinePeriod = j.at("sinePeriod").get<double>();
  s.stepHeight = j.at("stepHeight").get<double>();
  s.stepPosFrac = j.at("stepPosFrac").get<double>();
  s.contrast = j.at("contrast").get<double>();
  s.noiseSigma = j.at("noiseSigma").get<double>();
  s.speckleDensity = j.at("speckleDensity").get<double>();
  s.seed = j.at("seed").get<uint32_t>();
  return s;
}

/// Deterministic spec family: silhouettes and boundary shapes cycle while
/// levels and shape parameters are drawn from the seed.
std::vector<SyntheticSpec> make_spec_family(const SynthArgs& args) {
  std::mt19937 rng(args.seed);
  auto uniform = [&](double lo, double hi) {
    return lo + (hi - lo) * (double(rng() >> 8) * (1.0 / 16777216.0));
  };
  const Silhouette silhouettes[3] = {Silhouette::Rectangle, Silhouette::Trapezoid,
                                     Silhouette::Flask};
  const BoundaryShape shapes[4] = {BoundaryShape::Flat, BoundaryShape::Slanted,
                                   BoundaryShape::Sine, BoundaryShape::StepBump};
  std::vector<SyntheticSpec> specs;
  for (int i = 0; i < args.count; ++i) {
    SyntheticSpec s;
    s.width = args.width;
    s.height = args.height;
    s.silhouette = silhouettes[i % 3];
    s.boundary = shapes[(i / 3) % 4];
    s.levelFrac = uniform(0.40, 0.72);
    s.slantDeg = uniform(5.0, 25.0);
    s.sineAmplitude = uniform(2.0, 5.0);
    s.sinePeriod = uniform(32.0, 64.0);
    s.stepHeight = uniform(4.0, 8.0);
    s.stepPosFrac = uniform(0.35, 0.65);
    s.contrast = args.contrast;
    s.noiseSigma = args.noiseSigma;
    s.speckleDensity = args.speckleDensity;
    s.seed = args.seed * 7919u + uint32_t(i);
    specs.push_back(s);
  }
  return specs;
}

int run_synth(const SynthArgs& args) {
  if (args.count < 0) fail("invalid-arguments", "--count must be >= 0");
  std::error_code ec;
  fs::create_directories(args.outdir, ec);
  if (ec) fail("io-error", "cannot create outdir " + args.outdir);

  json manifest;
  manifest["cases"] = json::array();
  std::vector<SyntheticSpec> specs = make_spec_family(args);
  for (size_t i = 0; i < specs.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "case_%03zu", i);
    SyntheticCase c;
    try {
      c = generate_synthetic(specs[i]);
    } catch (const std::invalid_argument& e) {
      fail("bad-input", std::string(name) + ": " + e.what());
    }

    fs::path base = fs::path(args.outdir) / name;
    save_png(c.image, base.string() + ".png");
    GrayImage maskImg(c.interior.width, c.interior.height);
    for (size_t k = 0; k < c.interior.data.size(); ++k)
      maskImg.data[k] = c.interior.data[k] ? 1.0 : 0.0;
    save_png(maskImg, base.string() + ".mask.png");

    json gt = json::array();
    for (const Pixel& p : c.groundTruth.points) gt.push_back({p.x, p.y});
    write_text(base.string() + ".gt.json", gt.dump() + "\n");

    json entry;
    entry["name"] = name;
    entry["spec"] = spec_json(specs[i]);
    entry["files"] = {std::string(name) + ".png", std::string(name) + ".mask.png",
                      std::string(name) + ".gt.json"};
    manifest["cases"].push_back(entry);
  }
  write_text(fs::path(args.outdir) / "manifest.json", manifest.dump(2) + "\n");
  return 0;
}

// ---------------------------------------------------------------------------
// bench
// ---------------------------------------------------------------------------

struct BenchArgs {
  std::string dataset;
  int generate = 0;
  uint32_t seed = 1;
  std::string outJson;
  int threads = 0;
  ConfigFlags flags;  // --indicator narrows the run to a single row
};

int run_bench(const BenchArgs& args) {
  std::vector<SyntheticSpec> specs;
  if (!args.dataset.empty()) {
    fs::path manifestPath = fs::path(args.dataset) / "manifest.json";
    std::ifstream in(manifestPath);
    if (!in) fail("io-error", "cannot read " + manifestPath.string());
    json manifest;
    try {
      in >> manifest;
      for (const auto& entry : manifest.at("cases"))
        specs.push_back(spec_from_json(entry.at("spec")));
    } catch (const json::exception& e) {
      fail("bad-input", std::string("corrupt manifest: ") + e.what());
    }
  } else if (args.generate > 0) {
    SynthArgs synth;
    synth.count = args.generate;
    synth.seed = args.seed;
    specs = make_spec_family(synth);
  } else {
    fail("invalid-arguments", "bench needs --dataset or --generate");
  }
  if (specs.empty()) fail("bad-input", "dataset contains no cases");

  std::vector<ScanConfig> configs;
  if (args.flags.indicatorGiven)
    configs = {args.flags.cfg};
  else
    configs = benchmark_indicator_configs(args.flags.cfg);

  BenchmarkReport report;
  try {
    report = run_benchmark(specs, configs, args.threads);
  } catch (const std::exception& e) {
    fail("bad-input", e.what());
  }

  std::cout << format_report_table(report);

  if (!args.outJson.empty()) {
    json out;
    out["rows"] = json::array();
    for (const auto& row : report.rows) {
      json r;
      r["indicator"] = indicator_name(row.indicator);
      r["cases"] = row.cases;
      r["truePct"] = sig9(row.true_pct());
      r["falsePct"] = sig9(row.false_pct());
      json levels;
      for (int l = 0; l < 5; ++l)
        levels[match_level_name(MatchLevel(l))] = sig9(row.level_pct(MatchLevel(l)));
      r["levels"] = levels;
      json perCase = json::array();
      for (MatchLevel l : row.perCase) perCase.push_back(match_level_name(l));
      r["perCase"] = perCase;
      out["rows"].push_back(r);
    }
    write_text(args.outJson, out.dump(2) + "\n");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Trace material boundaries inside transparent vessels"};
  app.require_subcommand(1);

  TraceArgs traceArgs;
  CLI::App* trace = app.add_subcommand("trace", "Trace boundaries in one image");
  trace->add_option("--image", traceArgs.imagePath, "Grayscale PNG or PGM input")
      ->required();
  trace->add_option("--mask", traceArgs.maskPath, "Vessel interior mask (nonzero = inside)");
  trace->add_option("--contour-json", traceArgs.contourPath,
                    "Vessel contour as a JSON array of [x,y] pairs");
  trace->add_option("--out-json", traceArgs.outJson, "Write paths + config + stats here");
  trace->add_option("--out-overlay", traceArgs.outOverlay, "Write an RGB overlay PNG");
  trace->add_option("--dump-cost", traceArgs.dumpCost, "Dump the cost field as 16-bit PGM");
  trace->add_option("--dump-edges", traceArgs.dumpEdges,
                    "Dump the edge map as PGM (edge indicators only)");
  trace->add_option("--downscale", traceArgs.downscaleFactor,
                    "Block-mean downscale factor applied to image and mask");
  trace->add_flag("--simple", traceArgs.simple, "Use the reference per-pair scan");
  trace->add_flag("--timing", traceArgs.timing, "Include elapsedMs in the JSON stats");
  trace->add_option("--threads", traceArgs.threads, "Worker threads (0 = all cores)")
      ->envname("VESSEL_TRACE_THREADS");
  traceArgs.flags.attach(trace);

  SynthArgs synthArgs;
  CLI::App* synth = app.add_subcommand("synth", "Generate synthetic test images");
  synth->add_option("--count", synthArgs.count, "Number of cases")->required();
  synth->add_option("--seed", synthArgs.seed, "RNG seed")->required();
  synth->add_option("--outdir", synthArgs.outdir, "Output directory")->required();
  synth->add_option("--width", synthArgs.width, "Image width")->capture_default_str();
  synth->add_option("--height", synthArgs.height, "Image height")->capture_default_str();
  synth->add_option("--contrast", synthArgs.contrast, "Boundary contrast")
      ->capture_default_str();
  synth->add_option("--noise", synthArgs.noiseSigma, "Gaussian noise sigma")
      ->capture_default_str();
  synth->add_option("--speckle", synthArgs.speckleDensity, "Speckle density")
      ->capture_default_str();

  BenchArgs benchArgs;
  CLI::App* bench = app.add_subcommand("bench", "Run the indicator benchmark");
  bench->add_option("--dataset", benchArgs.dataset, "Dataset dir from `synth`");
  bench->add_option("--generate", benchArgs.generate, "Generate N cases in-process");
  bench->add_option("--seed", benchArgs.seed, "Seed for --generate")->capture_default_str();
  bench->add_option("--out-json", benchArgs.outJson, "Write the JSON report here");
  bench->add_option("--threads", benchArgs.threads, "Worker threads (0 = all cores)")
      ->envname("VESSEL_TRACE_THREADS");
  benchArgs.flags.attach(bench);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "vessel-trace: error: invalid-arguments: " << e.what() << "\n";
    return 1;
  }

  try {
    if (trace->parsed()) return run_trace(traceArgs);
    if (synth->parsed()) return run_synth(synthArgs);
    if (bench->parsed()) return run_bench(benchArgs);
  } catch (const ImageIoError& e) {
    fail("io-error", e.what());
  } catch (const std::exception& e) {
    fail("bad-input", e.what());
  }
  return 1;
}
