#pragma once

#include "wecfarm/optimize.hpp"

namespace wecfarm {

// Bounded Nelder-Mead refiner. Candidates are clamped to the box before
// scoring; constraint violations enter through a quadratic penalty so the
// search can traverse mildly infeasible regions while converging feasible.
struct NelderMeadConfig {
  int max_evaluations = 2000;
  double initial_step = 0.05;   // simplex edge, relative to variable range
  double tolerance = 1e-6;      // scaled simplex diameter
  double penalty_mu = 1e6;
};

OptResult run_local(const ScoreFn& score, const std::vector<Bound>& bounds,
                    const std::vector<double>& x0, const NelderMeadConfig& config);

}  // namespace wecfarm
