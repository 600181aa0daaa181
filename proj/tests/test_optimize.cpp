#include <cmath>

#include "doctest.h"
#include "wecfarm/constants.hpp"
#include "wecfarm/errors.hpp"
#include "wecfarm/ga.hpp"
#include "wecfarm/hydro_cache.hpp"
#include "wecfarm/nelder_mead.hpp"
#include "wecfarm/optimize.hpp"
#include "wecfarm/single_body.hpp"

using namespace wecfarm;

namespace {

ScoreFn sphere() {
  return [](const std::vector<double>& x) {
    EvalOutcome out;
    for (double v : x) out.objective += v * v;
    return out;
  };
}

const std::vector<Bound> kBox = {{"x", -5.0, 5.0}, {"y", -5.0, 5.0}};

OptProblem control_problem(HydroCache* cache) {
  OptProblem problem;
  problem.space = make_variable_space(false, true, false, 1);
  problem.base.geom = {3.0, 2.0, 50.0};
  problem.base.pto = {8e4, 0.0};
  problem.base.layout = {{0.0, 0.0}};
  problem.wave = RegularWave(2.0, 2.0 * kPi);  // omega = 1 rad/s
  problem.backend.variant = BackendVariant::kIsolated;
  problem.cache = cache;
  return problem;
}

}  // namespace

TEST_CASE("variable space carries the default bounds") {
  const VariableSpace s = make_variable_space(true, true, true, 3);
  REQUIRE(s.dim() == 8);  // R, AR, k_pto, b_pto, x2, x3, y2, y3
  CHECK(s.bounds[0].lo == 0.5);
  CHECK(s.bounds[0].hi == 10.0);
  CHECK(s.bounds[1].lo == 0.2);
  CHECK(s.bounds[2].lo == -5e5);
  CHECK(s.bounds[3].lo == 0.0);
  const double half = layout_halfwidth(3);
  CHECK(half == doctest::Approx(0.5 * std::sqrt(6e4)));
  CHECK(s.bounds[4].lo == 0.0);       // x bounds are one-sided
  CHECK(s.bounds[4].hi == doctest::Approx(half));
  CHECK(s.bounds[6].lo == doctest::Approx(-half));  // y bounds symmetric
}

TEST_CASE("design mapping and constraint arithmetic") {
  OptProblem problem;
  problem.space = make_variable_space(true, false, false, 1);
  problem.base.geom = {3.0, 2.0, 50.0};
  problem.base.pto = {8e4, 0.0};
  problem.base.layout = {{0.0, 0.0}};

  const FarmDesign d = design_from_vector({10.0, 0.2}, problem);
  CHECK(d.geom.radius == 10.0);
  CHECK(d.geom.draft() == doctest::Approx(50.0));
  const EvalOutcome out = evaluate({10.0, 0.2}, problem);
  CHECK(out.violation >= 30.0);  // draft 50 m exceeds the 20 m bound
  CHECK(!std::isfinite(-out.objective));  // draft >= depth cannot be simulated

  const ConstraintReport feas = distance_constraints(
      {{0.0, 0.0}, {14.0, 0.0}}, 2.0, 10.0);
  CHECK(feas.total == 0.0);
  const ConstraintReport tight = distance_constraints(
      {{0.0, 0.0}, {10.0, 0.0}}, 2.0, 10.0);
  CHECK(tight.total == doctest::Approx(4.0));
}

TEST_CASE("feasibility rules order outcomes") {
  EvalOutcome feasible_good{-5.0, 0.0, false, false, ""};
  EvalOutcome feasible_bad{-1.0, 0.0, false, false, ""};
  EvalOutcome infeasible{-100.0, 2.0, false, false, ""};
  EvalOutcome less_infeasible{-0.1, 0.5, false, false, ""};
  EvalOutcome failed{1e300, 0.0, false, true, "boom"};

  CHECK(outcome_better(feasible_good, feasible_bad));
  CHECK(outcome_better(feasible_bad, infeasible));
  CHECK(outcome_better(less_infeasible, infeasible));
  CHECK(outcome_better(feasible_bad, failed));
  CHECK_FALSE(outcome_better(failed, less_infeasible));
}

TEST_CASE("GA solves the sphere to millimetre precision") {
  GaConfig cfg;
  cfg.population = 40;
  cfg.generations = 100;
  cfg.seed = 3;
  const OptResult r = run_ga(sphere(), kBox, cfg);
  REQUIRE(r.best_x.size() == 2);
  CHECK(std::hypot(r.best_x[0], r.best_x[1]) < 1e-3);
  CHECK(r.feasible);
  // Trace is monotone in the best objective.
  for (std::size_t i = 1; i < r.trace.size(); ++i)
    CHECK(r.trace[i].best_objective <= r.trace[i - 1].best_objective + 1e-15);
}

TEST_CASE("GA is deterministic and thread-count independent") {
  GaConfig cfg;
  cfg.population = 24;
  cfg.generations = 20;
  cfg.seed = 11;
  const OptResult a = run_ga(sphere(), kBox, cfg);
  const OptResult b = run_ga(sphere(), kBox, cfg);
  cfg.threads = 4;
  const OptResult c = run_ga(sphere(), kBox, cfg);
  REQUIRE(a.trace.size() == b.trace.size());
  REQUIRE(a.trace.size() == c.trace.size());
  for (std::size_t i = 0; i < a.trace.size(); ++i) {
    CHECK(a.trace[i].best_objective == b.trace[i].best_objective);
    CHECK(a.trace[i].best_objective == c.trace[i].best_objective);
  }
  CHECK(a.best_x == b.best_x);
  CHECK(a.best_x == c.best_x);
}

TEST_CASE("local refiner descends and respects its start") {
  NelderMeadConfig cfg;
  const OptResult from_far = run_local(sphere(), kBox, {4.0, -3.0}, cfg);
  CHECK(from_far.best.objective < 1e-8);
  for (std::size_t i = 1; i < from_far.trace.size(); ++i)
    CHECK(from_far.trace[i].best_objective <=
          from_far.trace[i - 1].best_objective + 1e-15);

  const OptResult at_opt = run_local(sphere(), kBox, {0.0, 0.0}, cfg);
  CHECK(at_opt.best.objective <= sphere()({0.0, 0.0}).objective);
  CHECK(std::hypot(at_opt.best_x[0], at_opt.best_x[1]) < 1e-3);
}

TEST_CASE("control-only impedance matching against the closed form") {
  HydroCache cache;
  OptProblem problem = control_problem(&cache);
  const double omega = problem.wave->omega();
  const SingleBodyCoeffs iso =
      isolated_heave_coefficients(problem.base.geom, omega);
  const double A = problem.wave->amplitude();
  const double p_opt = std::norm(iso.excitation) * A * A /
                       (8.0 * iso.radiation_damping);
  const double k_opt = omega * omega * (problem.base.geom.mass() + iso.added_mass) -
                       problem.base.geom.hydrostatic_stiffness();
  REQUIRE(k_opt > -5e5);
  REQUIRE(k_opt < 5e5);

  GaConfig ga;
  ga.population = 24;
  ga.generations = 40;
  ga.seed = 5;
  OptResult best = run_ga(problem, ga);
  const OptResult refined = run_local(
      [&](const std::vector<double>& x) { return evaluate(x, problem); },
      problem.space.bounds, best.best_x, NelderMeadConfig{});
  if (outcome_better(refined.best, best.best)) best = refined;

  const FarmDesign d = design_from_vector(best.best_x, problem);
  const double volume = d.geom.volume();
  const double achieved = -best.best.objective * volume;  // p_v * V = power
  CHECK(achieved == doctest::Approx(p_opt).epsilon(0.01));
  CHECK(d.pto.b_pto == doctest::Approx(iso.radiation_damping).epsilon(0.02));
  CHECK(d.pto.k_pto == doctest::Approx(k_opt).epsilon(0.05));
}

TEST_CASE("isolated backend makes layout-only objectives flat") {
  HydroCache cache;
  OptProblem problem;
  problem.space = make_variable_space(false, false, true, 3);
  problem.base.geom = {3.0, 2.0, 50.0};
  problem.base.pto = {8e4, 0.0};
  problem.base.layout = {{0.0, 0.0}, {100.0, 0.0}, {200.0, 0.0}};
  problem.climate = synth_site_climate(ClimateProfile::kHighEnergy, 4);
  problem.backend.variant = BackendVariant::kIsolated;
  problem.cache = &cache;

  double lo = 1e300, hi = -1e300;
  const double half = layout_halfwidth(3);
  for (double shift : {0.2, 0.4, 0.6, 0.8}) {
    const std::vector<double> x = {shift * half, half, -0.3 * half, 0.5 * half};
    const EvalOutcome out = evaluate(x, problem);
    if (out.violation == 0.0) {
      lo = std::min(lo, out.objective);
      hi = std::max(hi, out.objective);
    }
  }
  CHECK(hi - lo <= 1e-9 * std::abs(lo));
}
