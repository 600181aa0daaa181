#pragma once

namespace wecfarm {

// Truncated vertical cylinder in finite-depth water.
// Slenderness ratio AR = R / D, so the draft is derived as D = R / AR.
struct CylinderGeometry {
  double radius;       // R [m]
  double slenderness;  // AR = R/D
  double depth;        // water depth h [m]

  double draft() const { return radius / slenderness; }

  void validate() const;

  // Hydrostatic stiffness rho*g*pi*R^2 [N/m].
  double hydrostatic_stiffness() const;
  // Neutral-buoyancy mass rho*pi*R^2*D [kg].
  double mass() const;
  // Displaced volume pi*R^2*D [m^3].
  double volume() const;
};

}  // namespace wecfarm
