#pragma once

namespace wecfarm {

// Problem-wide physical constants (SI units).
inline constexpr double kRhoWater = 1025.0;  // kg/m^3
inline constexpr double kGravity = 9.81;     // m/s^2
inline constexpr double kPi = 3.14159265358979323846;

}  // namespace wecfarm
