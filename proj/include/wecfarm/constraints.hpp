#pragma once

#include <vector>

#include "wecfarm/array_hydro.hpp"

namespace wecfarm {

// Violations of the pairwise safety-distance and draft-bound constraints.
// total == 0 exactly iff the design is feasible.
struct ConstraintReport {
  struct PairViolation {
    int p;
    int q;
    double amount;  // [m]
  };
  std::vector<PairViolation> pair_violations;
  double draft_violation = 0.0;  // [m]
  double total = 0.0;

  bool feasible() const { return total == 0.0; }
};

// Per-pair violation max(0, 2R + s_d - d_pq).
ConstraintReport distance_constraints(const std::vector<Vec2>& layout, double radius,
                                      double safety_distance);

// Adds the draft-bound violation max(0, D - d_max) + max(0, d_min - D).
ConstraintReport farm_constraints(const std::vector<Vec2>& layout, double radius,
                                  double draft, double safety_distance,
                                  double draft_min, double draft_max);

inline constexpr double kDefaultSafetyDistance = 10.0;  // [m]
inline constexpr double kDefaultDraftMin = 0.5;         // [m]
inline constexpr double kDefaultDraftMax = 20.0;        // [m]

}  // namespace wecfarm
