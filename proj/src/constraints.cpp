#include "wecfarm/constraints.hpp"

#include <cmath>

#include "wecfarm/errors.hpp"

namespace wecfarm {

ConstraintReport distance_constraints(const std::vector<Vec2>& layout, double radius,
                                      double safety_distance) {
  if (safety_distance < 0.0)
    throw InvalidArgument("distance_constraints: safety distance must be >= 0");
  ConstraintReport report;
  const int n = static_cast<int>(layout.size());
  for (int p = 0; p < n; ++p)
    for (int q = p + 1; q < n; ++q) {
      const double d = std::hypot(layout[p].x - layout[q].x,
                                  layout[p].y - layout[q].y);
      const double v = std::max(0.0, 2.0 * radius + safety_distance - d);
      if (v > 0.0) {
        report.pair_violations.push_back({p, q, v});
        report.total += v;
      }
    }
  return report;
}

ConstraintReport farm_constraints(const std::vector<Vec2>& layout, double radius,
                                  double draft, double safety_distance,
                                  double draft_min, double draft_max) {
  ConstraintReport report = distance_constraints(layout, radius, safety_distance);
  report.draft_violation =
      std::max(0.0, draft - draft_max) + std::max(0.0, draft_min - draft);
  report.total += report.draft_violation;
  return report;
}

}  // namespace wecfarm
