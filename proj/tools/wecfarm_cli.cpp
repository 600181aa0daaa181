// wecfarm command line: site-climate generation, hydrodynamic coefficient
// dumps, single-design simulation, optimization studies, and sweeps.
//
// Exit codes: 0 success, 2 invalid input, 3 infeasible design, 4 solver failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "wecfarm/array_hydro.hpp"
#include "wecfarm/climate.hpp"
#include "wecfarm/constraints.hpp"
#include "wecfarm/errors.hpp"
#include "wecfarm/farm.hpp"
#include "wecfarm/hydro_cache.hpp"
#include "wecfarm/study.hpp"
#include "wecfarm/toml_lite.hpp"
#include "wecfarm/util.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace wecfarm;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitSolver = 4;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

// Common flags shared by the design-evaluating subcommands.
struct CommonArgs {
  std::string config_path;
  std::string climate_path;
  std::string backend = "pa";
  double p_limit = -1.0;  // <0 -> none
  std::uint64_t seed = 1;
  int threads = 1;
  std::string out_dir;
  bool force = false;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "TOML config file")
      ->envname("WECFARM_CONFIG");
  cmd->add_option("--climate", args.climate_path, "site climate CSV")
      ->envname("WECFARM_CLIMATE");
  cmd->add_option("--backend", args.backend, "hydro backend: isolated|pa|ms")
      ->envname("WECFARM_BACKEND");
  cmd->add_option("--p-limit", args.p_limit, "saturation limit [W], <0 disables")
      ->envname("WECFARM_P_LIMIT");
  cmd->add_option("--seed", args.seed, "RNG seed")->envname("WECFARM_SEED");
  cmd->add_option("--threads", args.threads, "worker thread cap")
      ->envname("WECFARM_THREADS");
  cmd->add_option("--out", args.out_dir, "output directory")
      ->envname("WECFARM_OUT");
  cmd->add_flag("--force", args.force, "overwrite existing outputs");
}

StudySpec spec_from_args(const std::string& preset, const CommonArgs& args) {
  StudySpec spec = default_study_spec(preset);
  if (!args.config_path.empty())
    apply_config(spec, toml::parse_file(args.config_path));
  // Explicit flags win over config-file values.
  spec.backend.variant = backend_from_string(args.backend);
  if (args.p_limit >= 0.0) spec.p_limit = args.p_limit;
  if (!args.climate_path.empty()) spec.climate_path = args.climate_path;
  spec.seed = args.seed;
  spec.threads = resolve_threads(args.threads);
  return spec;
}

BundleInfo bundle_info(const StudySpec& spec, const std::vector<std::string>& args) {
  BundleInfo info;
  info.args = args;
  if (!spec.climate_path.empty())
    info.input_digests[spec.climate_path] = file_digest(spec.climate_path);
  return info;
}

int run_study_command(const std::string& preset, const std::string& manifest_path,
                      const CommonArgs& args,
                      const std::vector<std::string>& argv) {
  StudySpec spec;
  BundleInfo info;
  if (!manifest_path.empty()) {
    std::ifstream in(manifest_path, std::ios::binary);
    if (!in) throw InvalidArgument("cannot open manifest " + manifest_path);
    std::ostringstream buf;
    buf << in.rdbuf();
    const json manifest = json::parse(buf.str());
    spec = study_spec_from_json(manifest.at("config").dump());
    // Replays reuse the recorded command line and input digests so the
    // regenerated bundle is byte-identical to the original.
    info.args = manifest.at("args").get<std::vector<std::string>>();
    for (const auto& [path, digest] : manifest.at("inputs").items())
      info.input_digests[path] = digest.get<std::string>();
  } else {
    if (preset.empty()) {
      std::cerr << "error: --preset or --manifest required; available presets:\n";
      for (const auto& [name, desc] : list_presets())
        std::cerr << "  " << name << "  " << desc << "\n";
      return kExitInvalid;
    }
    spec = spec_from_args(preset, args);
    info = bundle_info(spec, argv);
  }
  if (args.out_dir.empty())
    throw InvalidArgument("--out directory is required");

  StudyResult result = run_study(spec);
  write_study_bundle(result, args.out_dir, args.force, info);

  for (const StudyRun& run : result.runs)
    std::cout << run.label << ": P=" << fmt(run.report.weighted_power_w)
              << " W  p_v=" << fmt(run.report.pv) << " W/m^3  q="
              << fmt(run.report.q)
              << (run.opt.feasible || run.opt.evaluations == 0 ? ""
                                                               : "  [infeasible]")
              << "\n";
  if (result.truncated) std::cout << "note: optimization budget truncated\n";
  std::cout << "bundle written to " << args.out_dir << "\n";
  return kExitOk;
}

int cmd_site(const std::string& synth, const std::string& check,
             std::uint64_t seed, const std::string& out) {
  if (!check.empty()) {
    SiteClimate climate = load_site_climate_file(check);  // throws on bad rows
    climate.validate();
    std::cout << "site " << climate.site_id << ": " << climate.n_yr()
              << " years, all normalized\n";
    for (const YearBins& y : climate.years) {
      double sum = 0.0;
      for (const SeaStateBin& b : y.bins) sum += b.prob;
      std::cout << "  year " << y.year << ": " << y.bins.size()
                << " bins, sum(prob)=" << fmt(sum) << "\n";
    }
    std::cout << "mean Hs=" << fmt(climate.mean_hs())
              << " m  mean Tp=" << fmt(climate.mean_tp())
              << " s  E[Hs^2 Tp]=" << fmt(climate.mean_energy_flux_proxy())
              << " m^2 s\n";
    return kExitOk;
  }
  if (synth.empty())
    throw InvalidArgument("site: give --synth <profile> or --check <csv>");
  const SiteClimate climate =
      synth_site_climate(climate_profile_from_string(synth), seed);
  if (out.empty()) throw InvalidArgument("site: --out file required");
  save_site_climate_file(climate, out);
  std::cout << "wrote " << climate.n_yr() << "-year " << synth << " climate to "
            << out << "\n";
  std::cout << "mean Hs=" << fmt(climate.mean_hs())
            << " m  mean Tp=" << fmt(climate.mean_tp())
            << " s  E[Hs^2 Tp]=" << fmt(climate.mean_energy_flux_proxy())
            << " m^2 s\n";
  return kExitOk;
}

int cmd_hydro(const CommonArgs& args, double radius, double slenderness,
              double depth) {
  const CylinderGeometry geom{radius, slenderness, depth};
  geom.validate();
  HydroBackend backend;
  backend.variant = backend_from_string(args.backend);
  HydroCache cache;
  const FrequencyGrid grid = FrequencyGrid::standard();

  std::ostringstream csv;
  csv << "omega_rad_s,added_mass_kg,damping_Nsm,excitation_abs_N\n";
  for (double w : grid.omegas) {
    const HydroSet set = array_hydro({{0.0, 0.0}}, geom, w, backend, 0.0, &cache);
    csv << fmt(w) << "," << fmt(set.added_mass(0, 0)) << ","
        << fmt(set.damping(0, 0)) << "," << fmt(std::abs(set.excitation(0)))
        << "\n";
  }
  if (args.out_dir.empty()) {
    std::cout << csv.str();
  } else {
    fs::create_directories(args.out_dir);
    const fs::path path = fs::path(args.out_dir) / "hydro.csv";
    if (fs::exists(path) && !args.force)
      throw InvalidArgument("refusing to overwrite " + path.string() +
                            " (use --force)");
    std::ofstream out(path, std::ios::binary);
    out << csv.str();
    std::cout << "wrote " << path.string() << "\n";
  }
  return kExitOk;
}

int cmd_simulate(const CommonArgs& args, const std::string& wave_arg,
                 const std::vector<std::string>&) {
  if (args.config_path.empty())
    throw InvalidArgument("simulate: --config with a [base] design is required");
  StudySpec spec = spec_from_args("table1-concurrent", args);  // carrier for base

  const ConstraintReport constraints = farm_constraints(
      spec.base.layout, spec.base.geom.radius, spec.base.geom.draft(),
      kDefaultSafetyDistance, kDefaultDraftMin, kDefaultDraftMax);
  if (!constraints.feasible()) {
    std::cerr << "infeasible design (total violation " << fmt(constraints.total)
              << " m):\n";
    for (const auto& v : constraints.pair_violations)
      std::cerr << "  bodies " << v.p + 1 << "-" << v.q + 1 << ": short by "
                << fmt(v.amount) << " m\n";
    if (constraints.draft_violation > 0.0)
      std::cerr << "  draft " << fmt(spec.base.geom.draft())
                << " m outside [" << fmt(kDefaultDraftMin) << ", "
                << fmt(kDefaultDraftMax) << "] m\n";
    return kExitInfeasible;
  }

  HydroCache cache;
  const SiteClimate climate = resolve_climate(spec);
  EvalContext ctx{spec.backend, spec.grid, spec.heading, &cache, spec.threads};
  const PerformanceReport report =
      evaluate_performance(spec.base, climate, spec.p_limit, ctx);

  std::cout << "P=" << fmt(report.weighted_power_w)
            << " W  p_v=" << fmt(report.pv) << " W/m^3  q=" << fmt(report.q)
            << "  omega_n="
            << (report.omega_n ? fmt(*report.omega_n) + " rad/s" : "none") << "\n";
  if (!wave_arg.empty()) {
    std::istringstream ws(wave_arg);
    double h = 0.0, t = 0.0;
    char comma = 0;
    if (!(ws >> h >> comma >> t) || comma != ',')
      throw InvalidArgument("simulate: --wave expects H,T");
    const double q_reg = q_factor_regular(spec.base, RegularWave(h, t), ctx);
    std::cout << "q_regular(" << fmt(h) << " m, " << fmt(t)
              << " s)=" << fmt(q_reg) << "  q_irregular=" << fmt(report.q) << "\n";
  }

  if (!args.out_dir.empty()) {
    fs::create_directories(args.out_dir);
    const fs::path rep_path = fs::path(args.out_dir) / "report.json";
    if (fs::exists(rep_path) && !args.force)
      throw InvalidArgument("refusing to overwrite " + rep_path.string() +
                            " (use --force)");
    json j;
    j["config"] = json::parse(study_spec_to_json(spec));
    j["weighted_power_W"] = report.weighted_power_w;
    j["weighted_power_unsat_W"] = report.weighted_power_unsat_w;
    j["pv_Wm3"] = report.pv;
    j["q"] = report.q;
    j["q_saturated"] = report.q_saturated;
    j["omega_n"] = report.omega_n ? json(*report.omega_n) : json(nullptr);
    std::ofstream(rep_path, std::ios::binary) << j.dump(2) << "\n";

    const PowerMatrix pm = power_matrix(spec.base, default_hs_axis(),
                                        default_tp_axis(), spec.p_limit, ctx);
    std::ofstream pmout(fs::path(args.out_dir) / "power_matrix.csv",
                        std::ios::binary);
    pmout << "hs_m,tp_s,device,unsat_W,sat_W\n";
    for (const PowerMatrixEntry& e : pm.entries)
      for (Eigen::Index d = 0; d < e.device_unsat.size(); ++d)
        pmout << fmt(e.hs) << "," << fmt(e.tp) << "," << d + 1 << ","
              << fmt(e.device_unsat(d)) << "," << fmt(e.device_sat(d)) << "\n";
    std::cout << "report written to " << args.out_dir << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wecfarm: frequency-domain simulation and co-design of heaving-"
               "cylinder wave energy farms"};
  app.require_subcommand(1);
  std::vector<std::string> raw_args(argv, argv + argc);

  // site
  std::string site_synth, site_check, site_out;
  std::uint64_t site_seed = 1;
  CLI::App* site = app.add_subcommand("site", "generate or inspect site climates");
  site->add_option("--synth", site_synth, "profile: high-energy|low-energy");
  site->add_option("--check", site_check, "validate an existing climate CSV");
  site->add_option("--seed", site_seed, "RNG seed")->envname("WECFARM_SEED");
  site->add_option("-o,--out", site_out, "output CSV path")
      ->envname("WECFARM_OUT");

  // hydro
  CommonArgs hydro_args;
  double hy_radius = 3.0, hy_slenderness = 2.0, hy_depth = 50.0;
  CLI::App* hydro = app.add_subcommand(
      "hydro", "isolated-cylinder coefficients over the standard grid");
  add_common(hydro, hydro_args);
  hydro->add_option("--radius", hy_radius, "cylinder radius [m]");
  hydro->add_option("--slenderness", hy_slenderness, "R/draft ratio");
  hydro->add_option("--depth", hy_depth, "water depth [m]");

  // simulate
  CommonArgs sim_args;
  std::string sim_wave;
  CLI::App* simulate =
      app.add_subcommand("simulate", "evaluate one fixed design");
  add_common(simulate, sim_args);
  simulate->add_option("--wave", sim_wave,
                       "also report q under a regular wave H,T");

  // optimize
  CommonArgs opt_args;
  std::string opt_preset, opt_manifest;
  CLI::App* optimize =
      app.add_subcommand("optimize", "run an optimization study preset");
  add_common(optimize, opt_args);
  optimize->add_option("--preset", opt_preset, "study preset id");
  optimize->add_option("--manifest", opt_manifest, "replay a manifest.json");

  // sweep
  CommonArgs sweep_args;
  std::string sweep_preset = "fig5-landscape", sweep_manifest, sweep_wave;
  CLI::App* sweep =
      app.add_subcommand("sweep", "parameter sweeps and landscape fields");
  add_common(sweep, sweep_args);
  sweep->add_option("--preset", sweep_preset, "sweep preset id");
  sweep->add_option("--manifest", sweep_manifest, "replay a manifest.json");
  sweep->add_option("--wave", sweep_wave,
                    "regular wave 'regular:H,T' or 'none' for irregular");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (site->parsed()) return cmd_site(site_synth, site_check, site_seed, site_out);
    if (hydro->parsed())
      return cmd_hydro(hydro_args, hy_radius, hy_slenderness, hy_depth);
    if (simulate->parsed()) return cmd_simulate(sim_args, sim_wave, raw_args);
    if (optimize->parsed())
      return run_study_command(opt_preset, opt_manifest, opt_args, raw_args);
    if (sweep->parsed()) {
      // Sweep-specific wave override on top of the preset default.
      if (!sweep_wave.empty() && sweep_wave != "none") {
        const std::string prefix = "regular:";
        if (sweep_wave.rfind(prefix, 0) != 0)
          throw InvalidArgument("sweep: --wave expects regular:H,T or none");
        std::istringstream ws(sweep_wave.substr(prefix.size()));
        double h = 0.0, t = 0.0;
        char comma = 0;
        if (!(ws >> h >> comma >> t) || comma != ',')
          throw InvalidArgument("sweep: --wave expects regular:H,T");
        (void)RegularWave(h, t);  // validates
      }
      if (!sweep_manifest.empty())
        return run_study_command("", sweep_manifest, sweep_args, raw_args);
      StudySpec spec = spec_from_args(sweep_preset, sweep_args);
      if (sweep_wave == "none") spec.wave.reset();
      else if (!sweep_wave.empty()) {
        std::istringstream ws(sweep_wave.substr(std::string("regular:").size()));
        double h = 0.0, t = 0.0;
        char comma = 0;
        ws >> h >> comma >> t;
        spec.wave = RegularWave(h, t);
      }
      if (sweep_args.out_dir.empty())
        throw InvalidArgument("--out directory is required");
      StudyResult result = run_study(spec);
      write_study_bundle(result, sweep_args.out_dir, sweep_args.force,
                         bundle_info(spec, raw_args));
      std::cout << "field of " << result.field.size() << " points written to "
                << sweep_args.out_dir << "\n";
      return kExitOk;
    }
  } catch (const SolverError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kExitSolver;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitInvalid;
}
