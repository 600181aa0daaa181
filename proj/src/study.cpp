#include "wecfarm/study.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "json.hpp"

#include "wecfarm/constants.hpp"
#include "wecfarm/errors.hpp"
#include "wecfarm/hydro_cache.hpp"
#include "wecfarm/util.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace wecfarm {

// ---------------------------------------------------------------- fixtures

std::vector<Vec2> row_layout(int n, double spacing) {
  std::vector<Vec2> layout(n);
  for (int i = 0; i < n; ++i) layout[i] = {i * spacing, 0.0};
  return layout;
}

std::vector<Vec2> column_layout(int n, double spacing) {
  std::vector<Vec2> layout(n);
  for (int i = 0; i < n; ++i) layout[i] = {0.0, i * spacing};
  return layout;
}

std::vector<Vec2> triangle_layout(double spacing) {
  return {{0.0, 0.0}, {spacing, 0.0}, {spacing / 2.0, spacing * std::sqrt(3.0) / 2.0}};
}

std::vector<std::vector<Vec2>> close_layout_set(double radius,
                                                double safety_distance) {
  const double d0 = 2.0 * radius + safety_distance;  // minimum feasible spacing
  return {
      row_layout(3, d0),
      row_layout(3, 1.5 * d0),
      column_layout(3, d0),
      triangle_layout(d0),
      {{0.0, 0.0}, {d0, 0.0}, {d0, d0}},  // L-shaped corner
  };
}

// ---------------------------------------------------------------- registry

namespace {

struct PresetInfo {
  const char* name;
  const char* description;
};

const PresetInfo kPresets[] = {
    {"table1-concurrent", "concurrent plant + layout optimization, 3-WEC farm"},
    {"table3-control", "control optimization across saturation levels and sites"},
    {"table4-plant", "plant optimization with prescribed PTO parameters"},
    {"table5-control-plant", "concurrent control + plant optimization"},
    {"table6-control-layout", "concurrent control + layout optimization, 3-WEC farm"},
    {"layout3", "layout-only optimization of a 3-WEC farm"},
    {"fig3-smoothing", "q-factor of five prescribed close layouts, regular vs irregular"},
    {"fig4-regular", "control optimization versus regular-wave frequency"},
    {"fig5-landscape", "two-WEC power landscape over the second body's position"},
};

const PresetInfo* find_preset(const std::string& name) {
  for (const PresetInfo& p : kPresets)
    if (name == p.name) return &p;
  return nullptr;
}

}  // namespace

std::vector<std::pair<std::string, std::string>> list_presets() {
  std::vector<std::pair<std::string, std::string>> out;
  for (const PresetInfo& p : kPresets) out.emplace_back(p.name, p.description);
  return out;
}

bool preset_known(const std::string& name) { return find_preset(name) != nullptr; }

StudySpec default_study_spec(const std::string& preset) {
  if (!preset_known(preset)) {
    std::string msg = "unknown preset '" + preset + "'; available:";
    for (const PresetInfo& p : kPresets) msg += std::string(" ") + p.name;
    throw InvalidArgument(msg);
  }
  StudySpec spec;
  spec.preset = preset;
  spec.base.geom = {3.0, 2.0, 50.0};  // R = 3 m, AR = 2 -> D = 1.5 m
  spec.base.pto = {8e4, 0.0};
  if (preset == "table3-control") {
    // A large stiff cylinder whose resonance stays above the climate peaks for
    // every admissible k_pto; the optimal stiffness then pins at the lower
    // bound and the optimal damping tracks the residual reactance.
    spec.base.geom = {6.0, 4.0, 50.0};
  } else if (preset == "fig3-smoothing") {
    // PTO stiffness tunes the natural frequency to the modal sea state so the
    // close layouts interact strongly at the regular-wave period.
    spec.base.pto = {2e4, -2.4e5};
  }

  int n = 1;
  if (preset == "table1-concurrent" || preset == "table5-control-plant" ||
      preset == "table6-control-layout" || preset == "layout3" ||
      preset == "fig3-smoothing")
    n = 3;
  if (preset == "fig5-landscape") n = 2;
  spec.base.layout = row_layout(n, 100.0);

  if (preset == "fig5-landscape") spec.wave = RegularWave(2.0, 10.0);
  return spec;
}

// ------------------------------------------------------------ TOML overlay

namespace {

[[noreturn]] void bad_key(const std::string& section, const std::string& key) {
  throw SchemaError("config: unknown key [" + section + "] " + key);
}

double require_number(const toml::Table& cfg, const std::string& s,
                      const std::string& k) {
  auto v = cfg.get_number(s, k);
  if (!v) throw SchemaError("config: [" + s + "] " + k + " must be a number");
  return *v;
}

}  // namespace

void apply_config(StudySpec& spec, const toml::Table& cfg) {
  for (const std::string& k : cfg.keys("study")) {
    if (k == "preset") {
      spec.preset = cfg.get_string("study", k).value_or(spec.preset);
      if (!preset_known(spec.preset))
        throw SchemaError("config: unknown preset '" + spec.preset + "'");
    } else if (k == "seed") {
      spec.seed = static_cast<std::uint64_t>(require_number(cfg, "study", k));
    } else if (k == "backend") {
      spec.backend.variant =
          backend_from_string(cfg.get_string("study", k).value_or("pa"));
    } else if (k == "p_limit") {
      spec.p_limit = require_number(cfg, "study", k);
    } else if (k == "climate") {
      spec.climate_path = cfg.get_string("study", k).value_or("");
    } else if (k == "multi_start") {
      spec.multi_start = static_cast<int>(require_number(cfg, "study", k));
    } else if (k == "threads") {
      spec.threads = static_cast<int>(require_number(cfg, "study", k));
    } else if (k == "heading") {
      spec.heading = require_number(cfg, "study", k);
    } else if (k == "n_terms") {
      spec.backend.n_terms = static_cast<int>(require_number(cfg, "study", k));
    } else if (k == "max_order") {
      spec.backend.max_order = static_cast<int>(require_number(cfg, "study", k));
    } else {
      bad_key("study", k);
    }
  }
  for (const std::string& k : cfg.keys("base")) {
    if (k == "radius") spec.base.geom.radius = require_number(cfg, "base", k);
    else if (k == "slenderness") spec.base.geom.slenderness = require_number(cfg, "base", k);
    else if (k == "depth") spec.base.geom.depth = require_number(cfg, "base", k);
    else if (k == "b_pto") spec.base.pto.b_pto = require_number(cfg, "base", k);
    else if (k == "k_pto") spec.base.pto.k_pto = require_number(cfg, "base", k);
    else if (k == "layout_x" || k == "layout_y") {
      auto xs = cfg.get_numbers("base", "layout_x");
      auto ys = cfg.get_numbers("base", "layout_y");
      if (!xs || !ys || xs->size() != ys->size())
        throw SchemaError("config: layout_x and layout_y must be numeric arrays of equal length");
      spec.base.layout.clear();
      for (std::size_t i = 0; i < xs->size(); ++i)
        spec.base.layout.push_back({(*xs)[i], (*ys)[i]});
    } else bad_key("base", k);
  }
  for (const std::string& k : cfg.keys("ga")) {
    if (k == "population") spec.ga.population = static_cast<int>(require_number(cfg, "ga", k));
    else if (k == "generations") spec.ga.generations = static_cast<int>(require_number(cfg, "ga", k));
    else if (k == "crossover_rate") spec.ga.crossover_rate = require_number(cfg, "ga", k);
    else if (k == "mutation_rate") spec.ga.mutation_rate = require_number(cfg, "ga", k);
    else if (k == "mutation_sigma") spec.ga.mutation_sigma = require_number(cfg, "ga", k);
    else if (k == "blend_alpha") spec.ga.blend_alpha = require_number(cfg, "ga", k);
    else bad_key("ga", k);
  }
  for (const std::string& k : cfg.keys("local")) {
    if (k == "max_evaluations") spec.local.max_evaluations = static_cast<int>(require_number(cfg, "local", k));
    else if (k == "initial_step") spec.local.initial_step = require_number(cfg, "local", k);
    else if (k == "tolerance") spec.local.tolerance = require_number(cfg, "local", k);
    else if (k == "penalty_mu") spec.local.penalty_mu = require_number(cfg, "local", k);
    else bad_key("local", k);
  }
  for (const std::string& k : cfg.keys("wave")) {
    if (k != "height" && k != "period") bad_key("wave", k);
  }
  if (cfg.has("wave", "height") || cfg.has("wave", "period"))
    spec.wave = RegularWave(require_number(cfg, "wave", "height"),
                            require_number(cfg, "wave", "period"));
  for (const std::string& k : cfg.keys("sweep")) {
    if (k == "cells") spec.sweep_cells = static_cast<int>(require_number(cfg, "sweep", k));
    else if (k == "extent") spec.sweep_extent = require_number(cfg, "sweep", k);
    else bad_key("sweep", k);
  }
  for (const std::string& k : cfg.keys("grid")) {
    if (k != "min" && k != "max" && k != "n") bad_key("grid", k);
  }
  if (cfg.has("grid", "min") || cfg.has("grid", "max") || cfg.has("grid", "n"))
    spec.grid = FrequencyGrid::linspace(
        require_number(cfg, "grid", "min"), require_number(cfg, "grid", "max"),
        static_cast<int>(require_number(cfg, "grid", "n")));
}

// ------------------------------------------------------------ JSON (spec)

std::string study_spec_to_json(const StudySpec& spec) {
  json j;
  j["preset"] = spec.preset;
  j["seed"] = spec.seed;
  j["backend"] = to_string(spec.backend.variant);
  j["n_terms"] = spec.backend.n_terms;
  j["max_order"] = spec.backend.max_order;
  if (spec.p_limit) j["p_limit"] = *spec.p_limit; else j["p_limit"] = nullptr;
  j["climate"] = spec.climate_path;
  j["base"] = {{"radius", spec.base.geom.radius},
               {"slenderness", spec.base.geom.slenderness},
               {"depth", spec.base.geom.depth},
               {"b_pto", spec.base.pto.b_pto},
               {"k_pto", spec.base.pto.k_pto}};
  json layout = json::array();
  for (const Vec2& p : spec.base.layout) layout.push_back({p.x, p.y});
  j["base"]["layout"] = layout;
  if (spec.wave)
    j["wave"] = {{"height", spec.wave->height}, {"period", spec.wave->period}};
  else
    j["wave"] = nullptr;
  j["ga"] = {{"population", spec.ga.population},
             {"generations", spec.ga.generations},
             {"crossover_rate", spec.ga.crossover_rate},
             {"mutation_rate", spec.ga.mutation_rate},
             {"mutation_sigma", spec.ga.mutation_sigma},
             {"blend_alpha", spec.ga.blend_alpha}};
  j["local"] = {{"max_evaluations", spec.local.max_evaluations},
                {"initial_step", spec.local.initial_step},
                {"tolerance", spec.local.tolerance},
                {"penalty_mu", spec.local.penalty_mu}};
  j["multi_start"] = spec.multi_start;
  j["threads"] = spec.threads;
  j["heading"] = spec.heading;
  j["grid"] = spec.grid.omegas;
  j["sweep"] = {{"cells", spec.sweep_cells}, {"extent", spec.sweep_extent}};
  return j.dump(2);
}

StudySpec study_spec_from_json(const std::string& text) {
  json j = json::parse(text);
  StudySpec spec = default_study_spec(j.at("preset").get<std::string>());
  spec.seed = j.at("seed").get<std::uint64_t>();
  spec.backend.variant = backend_from_string(j.at("backend").get<std::string>());
  spec.backend.n_terms = j.at("n_terms").get<int>();
  spec.backend.max_order = j.at("max_order").get<int>();
  if (!j.at("p_limit").is_null()) spec.p_limit = j.at("p_limit").get<double>();
  spec.climate_path = j.at("climate").get<std::string>();
  const json& b = j.at("base");
  spec.base.geom = {b.at("radius").get<double>(), b.at("slenderness").get<double>(),
                    b.at("depth").get<double>()};
  spec.base.pto = {b.at("b_pto").get<double>(), b.at("k_pto").get<double>()};
  spec.base.layout.clear();
  for (const json& p : b.at("layout"))
    spec.base.layout.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
  if (!j.at("wave").is_null())
    spec.wave = RegularWave(j["wave"].at("height").get<double>(),
                            j["wave"].at("period").get<double>());
  else
    spec.wave.reset();
  const json& g = j.at("ga");
  spec.ga.population = g.at("population").get<int>();
  spec.ga.generations = g.at("generations").get<int>();
  spec.ga.crossover_rate = g.at("crossover_rate").get<double>();
  spec.ga.mutation_rate = g.at("mutation_rate").get<double>();
  spec.ga.mutation_sigma = g.at("mutation_sigma").get<double>();
  spec.ga.blend_alpha = g.at("blend_alpha").get<double>();
  const json& l = j.at("local");
  spec.local.max_evaluations = l.at("max_evaluations").get<int>();
  spec.local.initial_step = l.at("initial_step").get<double>();
  spec.local.tolerance = l.at("tolerance").get<double>();
  spec.local.penalty_mu = l.at("penalty_mu").get<double>();
  spec.multi_start = j.at("multi_start").get<int>();
  spec.threads = j.at("threads").get<int>();
  spec.heading = j.at("heading").get<double>();
  spec.grid.omegas = j.at("grid").get<std::vector<double>>();
  spec.sweep_cells = j.at("sweep").at("cells").get<int>();
  spec.sweep_extent = j.at("sweep").at("extent").get<double>();
  return spec;
}

// ---------------------------------------------------------------- running

SiteClimate resolve_climate(const StudySpec& spec) {
  if (!spec.climate_path.empty()) return load_site_climate_file(spec.climate_path);
  return synth_site_climate(ClimateProfile::kHighEnergy, spec.seed);
}

namespace {

OptProblem make_problem(const StudySpec& spec, const SiteClimate& climate,
                        bool plant, bool control, bool layout,
                        std::optional<RegularWave> wave, HydroCache* cache) {
  OptProblem problem;
  problem.space = make_variable_space(plant, control, layout, spec.base.n_wec());
  problem.base = spec.base;
  problem.climate = climate;
  problem.wave = wave;
  problem.backend = spec.backend;
  problem.grid = spec.grid;
  problem.p_limit = spec.p_limit;
  problem.heading = spec.heading;
  problem.cache = cache;
  problem.threads = 1;  // parallelism lives at the population level
  return problem;
}

PerformanceReport regular_report(const FarmDesign& design, const RegularWave& wave,
                                 std::optional<double> p_limit,
                                 const EvalContext& ctx) {
  const double w = wave.omega();
  const HydroSet hydro =
      array_hydro(design.layout, design.geom, w, ctx.backend, ctx.heading, ctx.cache);
  Eigen::VectorXd p = device_power_regular(design, hydro, w, wave.amplitude());
  PerformanceReport report;
  report.n_wec = design.n_wec();
  report.device_weighted_w = p;
  report.weighted_power_unsat_w = p.sum();
  if (p_limit)
    for (Eigen::Index i = 0; i < p.size(); ++i) p(i) = std::min(p(i), *p_limit);
  report.weighted_power_w = p.sum();
  report.pv = report.weighted_power_w /
              (design.n_wec() * design.geom.volume());
  report.q = q_factor_regular(design, wave, ctx);
  report.q_saturated = report.q;
  report.omega_n = natural_frequency(design, ctx);
  return report;
}

PerformanceReport make_report(const FarmDesign& design, const StudySpec& spec,
                              const SiteClimate& climate,
                              std::optional<RegularWave> wave, HydroCache* cache) {
  EvalContext ctx{spec.backend, spec.grid, spec.heading, cache, spec.threads};
  if (wave) return regular_report(design, *wave, spec.p_limit, ctx);
  return evaluate_performance(design, climate, spec.p_limit, ctx);
}

// GA followed by multi-start local refinement; traces are concatenated so the
// bundle shows one monotone best-so-far history.
StudyRun solve_run(const std::string& label, const OptProblem& problem,
                   const StudySpec& spec, HydroCache* cache, bool& truncated) {
  ScoreFn score = [&problem](const std::vector<double>& x) {
    return evaluate(x, problem);
  };
  GaConfig ga = spec.ga;
  ga.seed = mix_seed(spec.seed, fnv1a64(label.data(), label.size()), 1);
  ga.threads = spec.threads;

  OptResult combined = run_ga(score, problem.space.bounds, ga);

  std::vector<std::vector<double>> starts;
  starts.push_back(combined.best_x);
  for (int s = 1; s < spec.multi_start; ++s) {
    std::mt19937_64 rng(mix_seed(ga.seed, 7777, s));
    std::vector<double> x(problem.space.bounds.size());
    for (std::size_t d = 0; d < x.size(); ++d) {
      std::uniform_real_distribution<double> u(problem.space.bounds[d].lo,
                                               problem.space.bounds[d].hi);
      x[d] = u(rng);
    }
    starts.push_back(std::move(x));
  }

  OptResult best_local;
  std::int64_t winner_offset = 0;
  bool have_local = false;
  for (const std::vector<double>& x0 : starts) {
    const std::int64_t offset = combined.evaluations;
    OptResult local = run_local(score, problem.space.bounds, x0, spec.local);
    combined.evaluations += local.evaluations;
    truncated = truncated || local.truncated;
    if (!have_local || outcome_better(local.best, best_local.best)) {
      best_local = local;
      winner_offset = offset;
      have_local = true;
    }
  }
  if (have_local && outcome_better(best_local.best, combined.best)) {
    combined.best = best_local.best;
    combined.best_x = best_local.best_x;
  }
  if (have_local) {
    const int iter0 = combined.trace.empty() ? 0 : combined.trace.back().iteration + 1;
    for (const TracePoint& t : best_local.trace)
      combined.trace.push_back({iter0 + t.iteration, t.best_objective,
                                t.best_violation, winner_offset + t.evaluations});
  }
  combined.feasible = combined.best.violation == 0.0 && !combined.best.failed;
  combined.truncated = truncated;

  StudyRun run;
  run.label = label;
  run.opt = combined;
  run.design = design_from_vector(combined.best_x, problem);
  run.report = make_report(run.design, spec, problem.climate, problem.wave, cache);
  return run;
}

std::string plimit_label(std::optional<double> p) {
  if (!p) return "pnone";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "p%gk", *p / 1e3);
  return buf;
}

void push_design_row(StudyResult& result, const StudyRun& run) {
  StudyRow row;
  row.label = run.label;
  row.values = {{"radius_m", run.design.geom.radius},
                {"slenderness", run.design.geom.slenderness},
                {"draft_m", run.design.geom.draft()},
                {"b_pto_Nsm", run.design.pto.b_pto},
                {"k_pto_Nm", run.design.pto.k_pto},
                {"power_W", run.report.weighted_power_w},
                {"pv_Wm3", run.report.pv},
                {"q", run.report.q},
                {"objective", run.opt.best.objective},
                {"violation", run.opt.best.violation},
                {"feasible", run.opt.feasible ? 1.0 : 0.0}};
  result.table.push_back(std::move(row));
}

void run_opt_preset(StudyResult& result, const StudySpec& spec,
                    const SiteClimate& climate, bool plant, bool control,
                    bool layout, HydroCache* cache) {
  OptProblem problem =
      make_problem(spec, climate, plant, control, layout, spec.wave, cache);
  StudyRun run = solve_run(spec.preset, problem, spec, cache, result.truncated);
  push_design_row(result, run);
  result.runs.push_back(std::move(run));
}

void run_table3(StudyResult& result, const StudySpec& spec, HydroCache* cache) {
  std::vector<std::pair<std::string, SiteClimate>> sites;
  if (!spec.climate_path.empty()) {
    sites.emplace_back("site", resolve_climate(spec));
  } else {
    sites.emplace_back("high",
                       synth_site_climate(ClimateProfile::kHighEnergy, spec.seed));
    sites.emplace_back("low",
                       synth_site_climate(ClimateProfile::kLowEnergy, spec.seed));
  }
  std::vector<std::optional<double>> limits;
  if (spec.p_limit)
    limits.push_back(spec.p_limit);
  else
    limits = {50e3, 150e3, 250e3, 350e3, std::nullopt};

  for (const auto& [site, climate] : sites)
    for (const std::optional<double>& p : limits) {
      StudySpec local_spec = spec;
      local_spec.p_limit = p;
      OptProblem problem =
          make_problem(local_spec, climate, false, true, false, spec.wave, cache);
      StudyRun run = solve_run(site + "-" + plimit_label(p), problem, local_spec,
                               cache, result.truncated);
      StudyRow row;
      row.label = run.label;
      row.values = {{"p_limit_W", p ? *p : -1.0},
                    {"b_pto_Nsm", run.design.pto.b_pto},
                    {"k_pto_Nm", run.design.pto.k_pto},
                    {"power_W", run.report.weighted_power_w},
                    {"pv_Wm3", run.report.pv},
                    {"feasible", run.opt.feasible ? 1.0 : 0.0}};
      result.table.push_back(std::move(row));
      result.runs.push_back(std::move(run));
    }
}

void run_fig3(StudyResult& result, const StudySpec& spec, HydroCache* cache) {
  const SiteClimate climate = resolve_climate(spec);
  const SeaStateBin modal = climate.modal_bin();
  const RegularWave wave(modal.hs, modal.tp);
  EvalContext ctx{spec.backend, spec.grid, spec.heading, cache, spec.threads};

  double max_irr = 0.0, max_reg = 0.0;
  const auto layouts =
      close_layout_set(spec.base.geom.radius, kDefaultSafetyDistance);
  for (std::size_t i = 0; i < layouts.size(); ++i) {
    FarmDesign design = spec.base;
    design.layout = layouts[i];
    const double q_irr = q_factor(design, climate, ctx);
    const double q_reg = q_factor_regular(design, wave, ctx);
    max_irr = std::max(max_irr, std::abs(q_irr - 1.0));
    max_reg = std::max(max_reg, std::abs(q_reg - 1.0));

    StudyRun run;
    run.label = "layout" + std::to_string(i + 1);
    run.design = design;
    run.report = make_report(design, spec, climate, std::nullopt, cache);
    result.table.push_back(
        {run.label, {{"q_irregular", q_irr}, {"q_regular", q_reg}}});
    result.runs.push_back(std::move(run));
  }
  result.table.push_back(
      {"max_abs_dev", {{"q_irregular", max_irr}, {"q_regular", max_reg}}});
}

void run_fig4(StudyResult& result, const StudySpec& spec, HydroCache* cache) {
  const SiteClimate climate = resolve_climate(spec);
  for (double w = 0.5; w < 1.301; w += 0.1) {
    StudySpec local_spec = spec;
    local_spec.wave = RegularWave(2.0, 2.0 * kPi / w);
    OptProblem problem = make_problem(local_spec, climate, false, true, false,
                                      local_spec.wave, cache);
    char label[32];
    std::snprintf(label, sizeof(label), "w%.2f", w);
    StudyRun run = solve_run(label, problem, local_spec, cache, result.truncated);
    result.table.push_back({run.label,
                            {{"omega_rad_s", w},
                             {"b_pto_Nsm", run.design.pto.b_pto},
                             {"k_pto_Nm", run.design.pto.k_pto},
                             {"power_W", run.report.weighted_power_w}}});
    result.runs.push_back(std::move(run));
  }
}

void run_fig5(StudyResult& result, const StudySpec& spec, HydroCache* cache) {
  const SiteClimate climate = resolve_climate(spec);
  const double dmin =
      2.0 * spec.base.geom.radius + kDefaultSafetyDistance;
  const int cells = std::max(2, spec.sweep_cells);
  const double extent = spec.sweep_extent;
  EvalContext ctx{spec.backend, spec.grid, spec.heading, cache, spec.threads};

  // Warm the isolated-body cache once so the parallel sweep only reads it.
  FarmDesign probe = spec.base;
  probe.layout = {{0.0, 0.0}, {dmin, 0.0}};
  (void)make_report(probe, spec, climate, spec.wave, cache);

  result.field.resize(static_cast<std::size_t>(cells) * cells);
  parallel_for(result.field.size(), spec.threads, [&](std::size_t idx) {
    const int ix = static_cast<int>(idx) / cells;
    const int iy = static_cast<int>(idx) % cells;
    const double x = dmin + extent * ix / (cells - 1);
    const double y = -extent / 2.0 + extent * iy / (cells - 1);
    FarmDesign design = spec.base;
    design.layout = {{0.0, 0.0}, {x, y}};
    double power;
    if (spec.wave) {
      const double w = spec.wave->omega();
      const HydroSet hydro = array_hydro(design.layout, design.geom, w,
                                         spec.backend, spec.heading, cache);
      power = device_power_regular(design, hydro, w, spec.wave->amplitude()).sum();
    } else {
      PowerMatrix pm = power_matrix(design, default_hs_axis(), default_tp_axis(),
                                    spec.p_limit, ctx);
      power = weighted_power(pm, climate, true);
    }
    result.field[idx] = {x, y, power};
  });

  StudyRun run;
  run.label = "base";
  run.design = probe;
  run.report = make_report(probe, spec, climate, spec.wave, cache);
  result.runs.push_back(std::move(run));
}

}  // namespace

StudyResult run_study(const StudySpec& spec, HydroCache* cache) {
  if (!preset_known(spec.preset)) default_study_spec(spec.preset);  // throws
  StudyResult result;
  result.spec = spec;

  HydroCache local_cache;
  if (!cache) cache = &local_cache;

  const std::string& p = spec.preset;
  if (p == "table1-concurrent") {
    run_opt_preset(result, spec, resolve_climate(spec), true, false, true, cache);
  } else if (p == "table3-control") {
    run_table3(result, spec, cache);
  } else if (p == "table4-plant") {
    run_opt_preset(result, spec, resolve_climate(spec), true, false, false, cache);
  } else if (p == "table5-control-plant") {
    run_opt_preset(result, spec, resolve_climate(spec), true, true, false, cache);
  } else if (p == "table6-control-layout") {
    run_opt_preset(result, spec, resolve_climate(spec), false, true, true, cache);
  } else if (p == "layout3") {
    run_opt_preset(result, spec, resolve_climate(spec), false, false, true, cache);
  } else if (p == "fig3-smoothing") {
    run_fig3(result, spec, cache);
  } else if (p == "fig4-regular") {
    run_fig4(result, spec, cache);
  } else if (p == "fig5-landscape") {
    run_fig5(result, spec, cache);
  }

  if (!result.runs.empty()) {
    // Power matrix of the first run's design under the resolved climate.
    EvalContext ctx{spec.backend, spec.grid, spec.heading, cache, spec.threads};
    result.power = power_matrix(result.runs.front().design, default_hs_axis(),
                                default_tp_axis(), spec.p_limit, ctx);
  }
  return result;
}

// ---------------------------------------------------------------- bundles

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write " + path.string());
  out << text;
}

json report_json(const PerformanceReport& r) {
  json j;
  j["weighted_power_W"] = r.weighted_power_w;
  j["weighted_power_unsat_W"] = r.weighted_power_unsat_w;
  j["pv_Wm3"] = r.pv;
  j["q"] = r.q;
  j["q_saturated"] = r.q_saturated;
  j["omega_n"] = r.omega_n ? json(*r.omega_n) : json(nullptr);
  j["capacity_factor"] = r.capacity ? json(*r.capacity) : json(nullptr);
  std::vector<double> dev(r.device_weighted_w.data(),
                          r.device_weighted_w.data() + r.device_weighted_w.size());
  j["device_power_W"] = dev;
  j["n_wec"] = r.n_wec;
  return j;
}

std::string layout_svg(const FarmDesign& design, double safety_distance) {
  double xmin = 1e30, xmax = -1e30, ymin = 1e30, ymax = -1e30;
  const double halo = design.geom.radius + safety_distance / 2.0;
  for (const Vec2& p : design.layout) {
    xmin = std::min(xmin, p.x - halo);
    xmax = std::max(xmax, p.x + halo);
    ymin = std::min(ymin, p.y - halo);
    ymax = std::max(ymax, p.y + halo);
  }
  const double pad = 0.1 * std::max(xmax - xmin, ymax - ymin) + 1.0;
  xmin -= pad; xmax += pad; ymin -= pad; ymax += pad;

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"600\" "
      << "viewBox=\"" << fmt(xmin) << " " << fmt(-ymax) << " " << fmt(xmax - xmin)
      << " " << fmt(ymax - ymin) << "\">\n";
  svg << "  <rect x=\"" << fmt(xmin) << "\" y=\"" << fmt(-ymax) << "\" width=\""
      << fmt(xmax - xmin) << "\" height=\"" << fmt(ymax - ymin)
      << "\" fill=\"#f4f9ff\"/>\n";
  for (const Vec2& p : design.layout) {
    // Safety disc: two of these touch exactly at separation 2R + s_d.
    svg << "  <circle cx=\"" << fmt(p.x) << "\" cy=\"" << fmt(-p.y) << "\" r=\""
        << fmt(halo)
        << "\" fill=\"none\" stroke=\"#e08020\" stroke-dasharray=\"2,2\" "
           "stroke-width=\"0.5\"/>\n";
    svg << "  <circle cx=\"" << fmt(p.x) << "\" cy=\"" << fmt(-p.y) << "\" r=\""
        << fmt(design.geom.radius)
        << "\" fill=\"#3070b0\" fill-opacity=\"0.6\" stroke=\"#104070\" "
           "stroke-width=\"0.5\"/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace

void write_study_bundle(const StudyResult& result, const std::string& out_dir,
                        bool force, const BundleInfo& info) {
  const fs::path dir(out_dir);
  if (fs::exists(dir / "result.json") && !force)
    throw InvalidArgument("output bundle exists at " + out_dir +
                          " (use --force to overwrite)");
  fs::create_directories(dir);

  // result.json
  json res;
  res["spec"] = json::parse(study_spec_to_json(result.spec));
  res["truncated"] = result.truncated;
  json runs = json::array();
  for (const StudyRun& run : result.runs) {
    json r;
    r["label"] = run.label;
    r["feasible"] = run.opt.feasible;
    r["truncated"] = run.opt.truncated;
    r["evaluations"] = run.opt.evaluations;
    r["objective"] = run.opt.best.objective;
    r["violation"] = run.opt.best.violation;
    r["best_x"] = run.opt.best_x;
    json d;
    d["radius"] = run.design.geom.radius;
    d["slenderness"] = run.design.geom.slenderness;
    d["draft"] = run.design.geom.draft();
    d["depth"] = run.design.geom.depth;
    d["b_pto"] = run.design.pto.b_pto;
    d["k_pto"] = run.design.pto.k_pto;
    json layout = json::array();
    for (const Vec2& p : run.design.layout) layout.push_back({p.x, p.y});
    d["layout"] = layout;
    r["design"] = d;
    r["report"] = report_json(run.report);
    runs.push_back(std::move(r));
  }
  res["runs"] = runs;
  json table = json::array();
  for (const StudyRow& row : result.table) {
    json r;
    r["label"] = row.label;
    for (const auto& [k, v] : row.values) r[k] = v;
    table.push_back(std::move(r));
  }
  res["table"] = table;
  write_text(dir / "result.json", res.dump(2) + "\n");

  // trace.csv
  {
    std::ostringstream csv;
    csv << "run,iteration,best_objective,best_violation,evaluations\n";
    for (const StudyRun& run : result.runs)
      for (const TracePoint& t : run.opt.trace)
        csv << run.label << "," << t.iteration << "," << fmt(t.best_objective)
            << "," << fmt(t.best_violation) << "," << t.evaluations << "\n";
    write_text(dir / "trace.csv", csv.str());
  }

  // layout.csv
  {
    std::ostringstream csv;
    csv << "run,body,x_m,y_m\n";
    for (const StudyRun& run : result.runs)
      for (std::size_t b = 0; b < run.design.layout.size(); ++b)
        csv << run.label << "," << b + 1 << "," << fmt(run.design.layout[b].x)
            << "," << fmt(run.design.layout[b].y) << "\n";
    write_text(dir / "layout.csv", csv.str());
  }

  // power_matrix.csv
  {
    std::ostringstream csv;
    csv << "hs_m,tp_s,device,unsat_W,sat_W\n";
    if (result.power)
      for (const PowerMatrixEntry& e : result.power->entries)
        for (Eigen::Index d = 0; d < e.device_unsat.size(); ++d)
          csv << fmt(e.hs) << "," << fmt(e.tp) << "," << d + 1 << ","
              << fmt(e.device_unsat(d)) << "," << fmt(e.device_sat(d)) << "\n";
    write_text(dir / "power_matrix.csv", csv.str());
  }

  // field.csv for sweeps
  if (!result.field.empty()) {
    std::ostringstream csv;
    csv << "x_m,y_m,power_W\n";
    for (const FieldPoint& p : result.field)
      csv << fmt(p.x) << "," << fmt(p.y) << "," << fmt(p.value) << "\n";
    write_text(dir / "field.csv", csv.str());
  }

  // layout.svg of the first run
  if (!result.runs.empty())
    write_text(dir / "layout.svg",
               layout_svg(result.runs.front().design, kDefaultSafetyDistance));

  // manifest.json last: digests cover everything written above
  json manifest;
  manifest["version"] = "wecfarm 0.1.0";
  manifest["config"] = json::parse(study_spec_to_json(result.spec));
  manifest["seed"] = result.spec.seed;
  manifest["args"] = info.args;
  json inputs = json::object();
  for (const auto& [path, digest] : info.input_digests) inputs[path] = digest;
  manifest["inputs"] = inputs;
  json outputs = json::object();
  std::vector<std::string> names = {"result.json", "trace.csv", "layout.csv",
                                    "power_matrix.csv"};
  if (!result.field.empty()) names.push_back("field.csv");
  if (!result.runs.empty()) names.push_back("layout.svg");
  std::sort(names.begin(), names.end());
  for (const std::string& name : names)
    outputs[name] = file_digest((dir / name).string());
  manifest["outputs"] = outputs;
  write_text(dir / "manifest.json", manifest.dump(2) + "\n");
}

}  // namespace wecfarm
