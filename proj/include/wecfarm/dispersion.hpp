#pragma once

#include <vector>

namespace wecfarm {

// Positive root k of omega^2 = g k tanh(k h), relative residual < 1e-12.
double wavenumber(double omega, double depth);

// Group velocity d(omega)/dk at the propagating wavenumber.
double group_velocity(double omega, double depth);

// First n positive roots k_m of omega^2 = -g k tan(k h)
// (evanescent-mode wavenumbers), ordered; k_m in ((m-1/2)pi/h, m pi/h).
std::vector<double> evanescent_wavenumbers(double omega, double depth, int n);

}  // namespace wecfarm
