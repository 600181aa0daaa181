#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "wecfarm/climate.hpp"
#include "wecfarm/constraints.hpp"
#include "wecfarm/farm.hpp"

namespace wecfarm {

struct Bound {
  std::string name;
  double lo;
  double hi;
};

// Active design blocks and their box bounds. Layout variables cover bodies
// 2..n; body 1 stays at the origin.
struct VariableSpace {
  bool plant = false;    // R, AR
  bool control = false;  // k_pto, b_pto
  bool layout = false;   // x_2..x_n, y_2..y_n
  int n_wec = 1;
  std::vector<Bound> bounds;

  int dim() const { return static_cast<int>(bounds.size()); }
};

VariableSpace make_variable_space(bool plant, bool control, bool layout, int n_wec);

// Layout half-width 0.5 * sqrt(2 n 1e4) [m].
double layout_halfwidth(int n_wec);

// One farm optimization problem: which variables move, what stays fixed,
// and how a candidate is scored.
struct OptProblem {
  VariableSpace space;
  FarmDesign base;                  // values for inactive blocks
  SiteClimate climate;              // irregular objective (ignored if wave set)
  std::optional<RegularWave> wave;  // regular-wave objective
  HydroBackend backend;
  FrequencyGrid grid = FrequencyGrid::standard();
  std::optional<double> p_limit;
  double heading = 0.0;
  double safety_distance = kDefaultSafetyDistance;
  double draft_min = kDefaultDraftMin;
  double draft_max = kDefaultDraftMax;
  HydroCache* cache = nullptr;
  int threads = 1;
};

// Applies a flat variable vector onto the base design.
FarmDesign design_from_vector(const std::vector<double>& x, const OptProblem& problem);

struct EvalOutcome {
  double objective = 0.0;  // minimized: -p_v
  double violation = 0.0;  // total constraint violation, 0 iff feasible
  bool clamped = false;    // x was projected into bounds
  bool failed = false;     // hydrodynamics failure; objective is worst-case
  std::string diagnostic;
};

// Deterministic scoring of one candidate: clamp to bounds, build the design,
// evaluate constraints, then -p_v under the problem's wave model.
EvalOutcome evaluate(const std::vector<double>& x, const OptProblem& problem);

// Deb's feasibility rules: feasible beats infeasible; among infeasible the
// smaller violation wins; among feasible the smaller objective wins.
bool outcome_better(const EvalOutcome& a, const EvalOutcome& b);

struct TracePoint {
  int iteration;
  double best_objective;
  double best_violation;
  std::int64_t evaluations;
};

struct OptResult {
  std::vector<double> best_x;
  EvalOutcome best;
  std::vector<TracePoint> trace;
  std::int64_t evaluations = 0;
  bool feasible = false;
  bool truncated = false;  // stopped by budget before convergence
};

using ScoreFn = std::function<EvalOutcome(const std::vector<double>&)>;

}  // namespace wecfarm
