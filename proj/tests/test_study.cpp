#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "wecfarm/constraints.hpp"
#include "wecfarm/errors.hpp"
#include "wecfarm/study.hpp"
#include "wecfarm/toml_lite.hpp"

using namespace wecfarm;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

StudySpec tiny_spec() {
  StudySpec spec = default_study_spec("layout3");
  spec.seed = 9;
  spec.ga.population = 8;
  spec.ga.generations = 4;
  spec.local.max_evaluations = 60;
  spec.multi_start = 1;
  spec.grid = FrequencyGrid::linspace(0.3, 1.5, 12);
  spec.backend.variant = BackendVariant::kPa;
  return spec;
}

}  // namespace

TEST_CASE("toml subset parses sections, scalars and arrays") {
  const std::string text =
      "# comment\n"
      "[study]\n"
      "preset = \"layout3\"  # trailing comment\n"
      "seed = 12\n"
      "threads = 2\n"
      "[base]\n"
      "radius = 3.5\n"
      "layout_x = [0, 60.0, 120]\n"
      "layout_y = [0, 0, 15]\n"
      "[flags]\n"
      "on = true\n";
  const toml::Table t = toml::parse(text);
  CHECK(t.get_string("study", "preset") == "layout3");
  CHECK(t.get_number("study", "seed") == 12.0);
  CHECK(t.get_number("base", "radius") == 3.5);
  CHECK(t.get_bool("flags", "on") == true);
  REQUIRE(t.get_numbers("base", "layout_x").has_value());
  CHECK(t.get_numbers("base", "layout_x")->size() == 3);

  try {
    toml::parse("[study]\nbroken\n");
    FAIL("expected SchemaError");
  } catch (const SchemaError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("config overlay maps onto the spec and rejects unknown keys") {
  StudySpec spec = default_study_spec("layout3");
  const toml::Table t = toml::parse(
      "[study]\nseed = 77\nbackend = \"ms\"\np_limit = 150000\n"
      "[base]\nradius = 4.0\nslenderness = 2.5\n"
      "[ga]\npopulation = 10\ngenerations = 3\n");
  apply_config(spec, t);
  CHECK(spec.seed == 77);
  CHECK(spec.backend.variant == BackendVariant::kMs);
  CHECK(spec.p_limit == 150000.0);
  CHECK(spec.base.geom.radius == 4.0);
  CHECK(spec.ga.population == 10);

  StudySpec other = default_study_spec("layout3");
  CHECK_THROWS_AS(apply_config(other, toml::parse("[study]\nbogus = 1\n")),
                  SchemaError);
}

TEST_CASE("spec json round trip") {
  StudySpec spec = tiny_spec();
  spec.p_limit = 250e3;
  spec.wave = RegularWave(1.5, 9.0);
  const StudySpec back = study_spec_from_json(study_spec_to_json(spec));
  CHECK(back.preset == spec.preset);
  CHECK(back.seed == spec.seed);
  CHECK(back.backend.variant == spec.backend.variant);
  CHECK(back.p_limit == spec.p_limit);
  REQUIRE(back.wave.has_value());
  CHECK(back.wave->height == spec.wave->height);
  CHECK(back.base.geom.radius == spec.base.geom.radius);
  CHECK(back.base.layout.size() == spec.base.layout.size());
  CHECK(back.grid.omegas == spec.grid.omegas);
  CHECK(back.ga.population == spec.ga.population);
  CHECK(back.local.max_evaluations == spec.local.max_evaluations);
}

TEST_CASE("prescribed close layouts are feasible") {
  for (const auto& layout : close_layout_set(3.0, kDefaultSafetyDistance)) {
    REQUIRE(layout.size() == 3);
    CHECK(distance_constraints(layout, 3.0, kDefaultSafetyDistance).total == 0.0);
  }
}

TEST_CASE("unknown preset raises a listing") {
  try {
    default_study_spec("fig9-nonsense");
    FAIL("expected InvalidArgument");
  } catch (const InvalidArgument& e) {
    CHECK(std::string(e.what()).find("table1-concurrent") != std::string::npos);
  }
  CHECK(preset_known("fig5-landscape"));
  CHECK_FALSE(preset_known("fig5"));
  CHECK(list_presets().size() == 9);
}

TEST_CASE("layout study produces a feasible bundle that reruns byte-identical") {
  const StudySpec spec = tiny_spec();
  const StudyResult a = run_study(spec);
  REQUIRE(a.runs.size() == 1);
  const StudyRun& run = a.runs.front();
  if (run.opt.feasible) {
    const ConstraintReport c = farm_constraints(
        run.design.layout, run.design.geom.radius, run.design.geom.draft(),
        kDefaultSafetyDistance, kDefaultDraftMin, kDefaultDraftMax);
    CHECK(c.total == 0.0);
  }

  const fs::path dir = fs::temp_directory_path() / "wecfarm_test_bundle";
  fs::remove_all(dir);
  write_study_bundle(a, dir.string(), false);
  for (const char* name : {"result.json", "trace.csv", "layout.csv",
                           "power_matrix.csv", "layout.svg", "manifest.json"})
    CHECK(fs::exists(dir / name));

  // Overwrite without force is refused; rerun + force is byte-identical.
  CHECK_THROWS_AS(write_study_bundle(a, dir.string(), false), InvalidArgument);
  const std::string first = slurp(dir / "result.json");
  const std::string first_trace = slurp(dir / "trace.csv");
  const StudyResult b = run_study(spec);
  write_study_bundle(b, dir.string(), true);
  CHECK(slurp(dir / "result.json") == first);
  CHECK(slurp(dir / "trace.csv") == first_trace);
  fs::remove_all(dir);
}

TEST_CASE("landscape sweep emits a rectangular field") {
  StudySpec spec = default_study_spec("fig5-landscape");
  spec.sweep_cells = 5;
  spec.sweep_extent = 150.0;
  spec.grid = FrequencyGrid::linspace(0.3, 1.5, 8);
  const StudyResult r = run_study(spec);
  REQUIRE(r.field.size() == 25);
  for (const FieldPoint& p : r.field) {
    CHECK(p.value > 0.0);
    CHECK(p.x >= 2.0 * spec.base.geom.radius + kDefaultSafetyDistance - 1e-9);
  }
}
