#include "wecfarm/ga.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "wecfarm/errors.hpp"
#include "wecfarm/util.hpp"

namespace wecfarm {

namespace {

std::vector<double> random_point(const std::vector<Bound>& bounds,
                                 std::mt19937_64& rng) {
  std::vector<double> x(bounds.size());
  for (std::size_t d = 0; d < bounds.size(); ++d) {
    std::uniform_real_distribution<double> u(bounds[d].lo, bounds[d].hi);
    x[d] = u(rng);
  }
  return x;
}

}  // namespace

OptResult run_ga(const ScoreFn& score, const std::vector<Bound>& bounds,
                 const GaConfig& config) {
  const int dim = static_cast<int>(bounds.size());
  if (dim == 0) throw InvalidArgument("run_ga: empty variable space");
  const int pop_size = config.population > 0 ? config.population : 8 + 4 * dim;
  const double mut_rate =
      config.mutation_rate > 0.0 ? config.mutation_rate : 1.0 / dim;

  std::vector<std::vector<double>> pop(pop_size);
  std::vector<EvalOutcome> outcomes(pop_size);

  for (int i = 0; i < pop_size; ++i) {
    std::mt19937_64 rng(mix_seed(config.seed, 0, i));
    pop[i] = random_point(bounds, rng);
  }

  OptResult result;
  auto evaluate_all = [&] {
    parallel_for(pop_size, config.threads,
                 [&](std::size_t i) { outcomes[i] = score(pop[i]); });
    result.evaluations += pop_size;
  };
  // Ties break toward the lower index so the trace is reproducible.
  auto best_index = [&] {
    int best = 0;
    for (int i = 1; i < pop_size; ++i)
      if (outcome_better(outcomes[i], outcomes[best])) best = i;
    return best;
  };

  evaluate_all();
  int best = best_index();
  result.trace.push_back(
      {0, outcomes[best].objective, outcomes[best].violation, result.evaluations});

  for (int gen = 1; gen <= config.generations; ++gen) {
    std::vector<std::vector<double>> next(pop_size);
    next[0] = pop[best];  // elitism
    EvalOutcome elite_outcome = outcomes[best];

    // Annealed mutation: coarse exploration early, fine tuning late.
    const double sigma_gen =
        config.mutation_sigma * std::pow(config.mutation_decay, gen);
    for (int i = 1; i < pop_size; ++i) {
      std::mt19937_64 rng(mix_seed(config.seed, gen, i));
      std::uniform_int_distribution<int> pick(0, pop_size - 1);
      std::uniform_real_distribution<double> unit(0.0, 1.0);

      auto tournament = [&] {
        const int a = pick(rng);
        const int b = pick(rng);
        if (a == b) return a;
        if (outcome_better(outcomes[a], outcomes[b])) return a;
        if (outcome_better(outcomes[b], outcomes[a])) return b;
        return std::min(a, b);
      };
      const std::vector<double>& p1 = pop[tournament()];
      const std::vector<double>& p2 = pop[tournament()];

      std::vector<double> child(dim);
      const bool crossover = unit(rng) < config.crossover_rate;
      for (int d = 0; d < dim; ++d) {
        if (crossover) {
          // BLX-alpha blend
          const double lo = std::min(p1[d], p2[d]);
          const double hi = std::max(p1[d], p2[d]);
          const double span = hi - lo;
          std::uniform_real_distribution<double> blend(
              lo - config.blend_alpha * span, hi + config.blend_alpha * span);
          child[d] = blend(rng);
        } else {
          child[d] = p1[d];
        }
        if (unit(rng) < mut_rate) {
          std::normal_distribution<double> gauss(
              0.0, sigma_gen * (bounds[d].hi - bounds[d].lo));
          child[d] += gauss(rng);
        }
        child[d] = std::clamp(child[d], bounds[d].lo, bounds[d].hi);
      }
      next[i] = std::move(child);
    }

    pop = std::move(next);
    evaluate_all();
    outcomes[0] = elite_outcome;  // elite carries its score
    best = best_index();
    result.trace.push_back({gen, outcomes[best].objective,
                            outcomes[best].violation, result.evaluations});
  }

  result.best_x = pop[best];
  result.best = outcomes[best];
  result.feasible = outcomes[best].violation == 0.0 && !outcomes[best].failed;
  return result;
}

OptResult run_ga(const OptProblem& problem, const GaConfig& config) {
  return run_ga([&](const std::vector<double>& x) { return evaluate(x, problem); },
                problem.space.bounds, config);
}

}  // namespace wecfarm
