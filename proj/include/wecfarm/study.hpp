#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wecfarm/ga.hpp"
#include "wecfarm/nelder_mead.hpp"
#include "wecfarm/optimize.hpp"
#include "wecfarm/toml_lite.hpp"

namespace wecfarm {

// Prescribed layout fixtures (spacing = center-to-center distance).
std::vector<Vec2> row_layout(int n, double spacing);
std::vector<Vec2> column_layout(int n, double spacing);
std::vector<Vec2> triangle_layout(double spacing);
// Five close 3-WEC arrangements near the minimum feasible spacing for a
// cylinder of the given radius; used by the smoothing study.
std::vector<std::vector<Vec2>> close_layout_set(double radius,
                                                double safety_distance);

// Fully resolved description of one study run: what moves, what is fixed,
// which wave model scores candidates, and the optimizer budgets.
struct StudySpec {
  std::string preset;
  std::uint64_t seed = 1;
  HydroBackend backend;
  std::optional<double> p_limit;        // [W]
  FarmDesign base;
  std::string climate_path;             // empty -> synthetic high-energy
  std::optional<RegularWave> wave;      // set -> regular-wave objective
  GaConfig ga;
  NelderMeadConfig local;
  int multi_start = 3;
  int threads = 1;
  FrequencyGrid grid = FrequencyGrid::standard();
  double heading = 0.0;
  int sweep_cells = 31;                 // per axis, landscape sweeps
  double sweep_extent = 400.0;          // [m] half-width of the swept square
};

std::vector<std::pair<std::string, std::string>> list_presets();
bool preset_known(const std::string& name);

// Baseline spec for a preset (defaults for everything else).
StudySpec default_study_spec(const std::string& preset);

// Overlay a TOML config onto a spec; unknown keys are errors.
void apply_config(StudySpec& spec, const toml::Table& cfg);

std::string study_spec_to_json(const StudySpec& spec);
StudySpec study_spec_from_json(const std::string& text);

struct StudyRow {
  std::string label;
  std::vector<std::pair<std::string, double>> values;
};

struct FieldPoint {
  double x;
  double y;
  double value;  // farm power [W]
};

struct StudyRun {
  std::string label;
  OptResult opt;
  FarmDesign design;           // best design of the run
  PerformanceReport report;    // under the run's climate
};

struct StudyResult {
  StudySpec spec;
  std::vector<StudyRun> runs;
  std::vector<StudyRow> table;
  std::vector<FieldPoint> field;  // nonempty for landscape sweeps
  std::optional<PowerMatrix> power;  // best run under the resolved climate
  bool truncated = false;
};

StudyResult run_study(const StudySpec& spec, HydroCache* cache = nullptr);

// Output bundle: result.json, trace.csv, layout.csv, power_matrix.csv,
// field.csv (sweeps only), layout.svg, manifest.json. All bytes are
// deterministic for a fixed spec; no timestamps.
struct BundleInfo {
  std::vector<std::string> args;                       // replay command line
  std::map<std::string, std::string> input_digests;    // path -> fnv1a64 hex
};

void write_study_bundle(const StudyResult& result, const std::string& out_dir,
                        bool force, const BundleInfo& info = {});

// Resolves the spec's climate (file or synthetic) deterministically.
SiteClimate resolve_climate(const StudySpec& spec);

}  // namespace wecfarm
