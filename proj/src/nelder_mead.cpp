#include "wecfarm/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "wecfarm/errors.hpp"

namespace wecfarm {

namespace {

struct Vertex {
  std::vector<double> x;
  EvalOutcome outcome;
  double merit;  // objective + mu * violation^2
};

double merit_of(const EvalOutcome& o, double mu) {
  if (o.failed || !std::isfinite(o.objective))
    return std::numeric_limits<double>::infinity();
  return o.objective + mu * o.violation * o.violation;
}

}  // namespace

OptResult run_local(const ScoreFn& score, const std::vector<Bound>& bounds,
                    const std::vector<double>& x0, const NelderMeadConfig& config) {
  const int dim = static_cast<int>(bounds.size());
  if (dim == 0) throw InvalidArgument("run_local: empty variable space");
  if (static_cast<int>(x0.size()) != dim)
    throw InvalidArgument("run_local: start point has wrong dimension");

  OptResult result;
  auto clamp_point = [&](std::vector<double> x) {
    for (int d = 0; d < dim; ++d) x[d] = std::clamp(x[d], bounds[d].lo, bounds[d].hi);
    return x;
  };
  auto make_vertex = [&](std::vector<double> x) {
    Vertex v;
    v.x = clamp_point(std::move(x));
    v.outcome = score(v.x);
    ++result.evaluations;
    v.merit = merit_of(v.outcome, config.penalty_mu);
    return v;
  };

  std::vector<Vertex> simplex;
  simplex.reserve(dim + 1);
  simplex.push_back(make_vertex(x0));
  for (int d = 0; d < dim; ++d) {
    std::vector<double> x = simplex[0].x;
    const double range = bounds[d].hi - bounds[d].lo;
    double step = config.initial_step * range;
    if (x[d] + step > bounds[d].hi) step = -step;
    x[d] += step;
    simplex.push_back(make_vertex(std::move(x)));
  }

  auto order = [&] {
    std::stable_sort(simplex.begin(), simplex.end(),
                     [](const Vertex& a, const Vertex& b) { return a.merit < b.merit; });
  };
  order();
  Vertex best_seen = simplex[0];

  int iteration = 0;
  result.trace.push_back({iteration, best_seen.outcome.objective,
                          best_seen.outcome.violation, result.evaluations});

  while (result.evaluations < config.max_evaluations) {
    // Scaled simplex diameter as the convergence measure.
    double diameter = 0.0;
    for (int i = 1; i <= dim; ++i)
      for (int d = 0; d < dim; ++d) {
        const double range = bounds[d].hi - bounds[d].lo;
        diameter = std::max(
            diameter, std::abs(simplex[i].x[d] - simplex[0].x[d]) / range);
      }
    if (diameter < config.tolerance) break;

    std::vector<double> centroid(dim, 0.0);
    for (int i = 0; i < dim; ++i)
      for (int d = 0; d < dim; ++d) centroid[d] += simplex[i].x[d] / dim;

    auto along = [&](double coef) {
      std::vector<double> x(dim);
      for (int d = 0; d < dim; ++d)
        x[d] = centroid[d] + coef * (centroid[d] - simplex[dim].x[d]);
      return x;
    };

    Vertex reflected = make_vertex(along(1.0));
    if (reflected.merit < simplex[0].merit) {
      Vertex expanded = make_vertex(along(2.0));
      simplex[dim] = expanded.merit < reflected.merit ? expanded : reflected;
    } else if (reflected.merit < simplex[dim - 1].merit) {
      simplex[dim] = reflected;
    } else {
      const bool outside = reflected.merit < simplex[dim].merit;
      Vertex contracted = make_vertex(along(outside ? 0.5 : -0.5));
      if (contracted.merit < std::min(reflected.merit, simplex[dim].merit)) {
        simplex[dim] = contracted;
      } else {
        // Shrink toward the best vertex.
        for (int i = 1; i <= dim; ++i) {
          std::vector<double> x(dim);
          for (int d = 0; d < dim; ++d)
            x[d] = simplex[0].x[d] + 0.5 * (simplex[i].x[d] - simplex[0].x[d]);
          simplex[i] = make_vertex(std::move(x));
          if (result.evaluations >= config.max_evaluations) break;
        }
      }
    }
    order();
    if (simplex[0].merit < best_seen.merit) best_seen = simplex[0];
    ++iteration;
    result.trace.push_back({iteration, best_seen.outcome.objective,
                            best_seen.outcome.violation, result.evaluations});
  }

  result.truncated = result.evaluations >= config.max_evaluations;
  result.best_x = best_seen.x;
  result.best = best_seen.outcome;
  result.feasible = best_seen.outcome.violation == 0.0 && !best_seen.outcome.failed;
  return result;
}

}  // namespace wecfarm
