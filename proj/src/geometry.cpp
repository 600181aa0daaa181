#include "wecfarm/geometry.hpp"

#include "wecfarm/constants.hpp"
#include "wecfarm/errors.hpp"

namespace wecfarm {

void CylinderGeometry::validate() const {
  if (!(radius > 0.0)) throw GeometryError("CylinderGeometry: radius must be > 0");
  if (!(slenderness > 0.0))
    throw GeometryError("CylinderGeometry: slenderness must be > 0");
  if (!(depth > 0.0)) throw GeometryError("CylinderGeometry: depth must be > 0");
  const double d = draft();
  if (!(d > 0.0) || !(d < depth))
    throw GeometryError("CylinderGeometry: draft must satisfy 0 < D < h");
}

double CylinderGeometry::hydrostatic_stiffness() const {
  return kRhoWater * kGravity * kPi * radius * radius;
}

double CylinderGeometry::mass() const {
  return kRhoWater * kPi * radius * radius * draft();
}

double CylinderGeometry::volume() const {
  return kPi * radius * radius * draft();
}

}  // namespace wecfarm
