#include "wecfarm/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wecfarm/errors.hpp"

namespace wecfarm {

double layout_halfwidth(int n_wec) {
  return 0.5 * std::sqrt(2.0 * n_wec * 1e4);
}

VariableSpace make_variable_space(bool plant, bool control, bool layout, int n_wec) {
  VariableSpace space;
  space.plant = plant;
  space.control = control;
  space.layout = layout;
  space.n_wec = n_wec;
  if (plant) {
    space.bounds.push_back({"R", 0.5, 10.0});
    space.bounds.push_back({"AR", 0.2, 10.0});
  }
  if (control) {
    space.bounds.push_back({"k_pto", -5e5, 5e5});
    space.bounds.push_back({"b_pto", 0.0, 5e5});
  }
  if (layout) {
    const double half = layout_halfwidth(n_wec);
    for (int i = 2; i <= n_wec; ++i)
      space.bounds.push_back({"x" + std::to_string(i), 0.0, half});
    for (int i = 2; i <= n_wec; ++i)
      space.bounds.push_back({"y" + std::to_string(i), -half, half});
  }
  return space;
}

FarmDesign design_from_vector(const std::vector<double>& x, const OptProblem& problem) {
  const VariableSpace& space = problem.space;
  if (static_cast<int>(x.size()) != space.dim())
    throw InvalidArgument("design_from_vector: dimension mismatch");
  FarmDesign design = problem.base;
  std::size_t i = 0;
  if (space.plant) {
    design.geom.radius = x[i++];
    design.geom.slenderness = x[i++];
  }
  if (space.control) {
    design.pto.k_pto = x[i++];
    design.pto.b_pto = x[i++];
  }
  if (space.layout) {
    design.layout.assign(space.n_wec, Vec2{});
    design.layout[0] = {0.0, 0.0};
    for (int b = 1; b < space.n_wec; ++b) design.layout[b].x = x[i + b - 1];
    i += space.n_wec - 1;
    for (int b = 1; b < space.n_wec; ++b) design.layout[b].y = x[i + b - 1];
    i += space.n_wec - 1;
  }
  return design;
}

EvalOutcome evaluate(const std::vector<double>& x, const OptProblem& problem) {
  EvalOutcome out;
  std::vector<double> clamped = x;
  for (std::size_t i = 0; i < clamped.size(); ++i) {
    const Bound& b = problem.space.bounds[i];
    const double v = std::clamp(clamped[i], b.lo, b.hi);
    if (v != clamped[i]) out.clamped = true;
    clamped[i] = v;
  }

  const FarmDesign design = design_from_vector(clamped, problem);
  const ConstraintReport constraints = farm_constraints(
      design.layout, design.geom.radius, design.geom.draft(),
      problem.safety_distance, problem.draft_min, problem.draft_max);
  out.violation = constraints.total;

  // Draft outside the water column cannot be simulated at all; treat it as a
  // pure constraint violation with worst-case objective.
  if (design.geom.draft() >= design.geom.depth || design.geom.draft() <= 0.0) {
    out.objective = std::numeric_limits<double>::infinity();
    out.violation = std::max(out.violation, 1.0 + design.geom.draft());
    out.diagnostic = "draft outside water column";
    return out;
  }

  try {
    EvalContext ctx{problem.backend, problem.grid, problem.heading, problem.cache,
                    problem.threads};
    double pv = 0.0;
    if (problem.wave) {
      const double w = problem.wave->omega();
      const HydroSet hydro = array_hydro(design.layout, design.geom, w,
                                         problem.backend, problem.heading,
                                         problem.cache);
      Eigen::VectorXd p =
          device_power_regular(design, hydro, w, problem.wave->amplitude());
      if (problem.p_limit)
        for (Eigen::Index i = 0; i < p.size(); ++i)
          p(i) = std::min(p(i), *problem.p_limit);
      pv = p.sum() / (design.n_wec() * design.geom.volume());
    } else {
      pv = objective_pv(design, problem.climate, problem.p_limit, ctx);
    }
    out.objective = -pv;
  } catch (const std::exception& ex) {
    out.failed = true;
    out.objective = std::numeric_limits<double>::infinity();
    out.diagnostic = ex.what();
  }
  return out;
}

bool outcome_better(const EvalOutcome& a, const EvalOutcome& b) {
  const bool fa = a.violation == 0.0 && !a.failed;
  const bool fb = b.violation == 0.0 && !b.failed;
  if (fa != fb) return fa;
  if (!fa) {
    if (a.failed != b.failed) return !a.failed;
    return a.violation < b.violation;
  }
  return a.objective < b.objective;
}

}  // namespace wecfarm
