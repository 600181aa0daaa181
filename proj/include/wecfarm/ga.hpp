#pragma once

#include <cstdint>

#include "wecfarm/optimize.hpp"

namespace wecfarm {

// Real-coded GA: tournament selection (size 2), blend crossover, gaussian
// mutation, elitism 1, Deb feasibility rules. Per-individual RNG streams are
// derived from (seed, generation, index), so the trace is bit-identical
// across runs and thread counts.
struct GaConfig {
  int population = 0;      // 0 -> 8 + 4 * dim
  int generations = 50;
  double blend_alpha = 0.5;
  double crossover_rate = 0.9;
  double mutation_rate = 0.0;   // 0 -> 1/dim
  double mutation_sigma = 0.1;   // relative to each variable's range
  double mutation_decay = 0.92;  // sigma shrinks by this factor per generation
  std::uint64_t seed = 0;
  int threads = 1;
};

OptResult run_ga(const ScoreFn& score, const std::vector<Bound>& bounds,
                 const GaConfig& config);

// Convenience wrapper scoring candidates with evaluate().
OptResult run_ga(const OptProblem& problem, const GaConfig& config);

}  // namespace wecfarm
