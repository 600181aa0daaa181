#include "wecfarm/dispersion.hpp"

#include <cmath>

#include "wecfarm/constants.hpp"
#include "wecfarm/errors.hpp"

namespace wecfarm {

double wavenumber(double omega, double depth) {
  if (!(omega > 0.0) || !(depth > 0.0))
    throw InvalidArgument("wavenumber: omega and depth must be > 0");
  const double g = kGravity;
  const double w2 = omega * omega;
  // Guo (2002) style initial guess, then Newton on f(k) = w2 - g k tanh(kh).
  double k = (w2 / g) / std::pow(std::tanh(std::pow(w2 * depth / g, 0.75)), 2.0 / 3.0);
  for (int it = 0; it < 100; ++it) {
    const double th = std::tanh(k * depth);
    const double f = w2 - g * k * th;
    const double df = -g * (th + k * depth * (1.0 - th * th));
    const double dk = f / df;
    k -= dk;
    if (std::abs(f) < 1e-13 * w2 && std::abs(dk) < 1e-14 * k) break;
  }
  return k;
}

double group_velocity(double omega, double depth) {
  const double k = wavenumber(omega, depth);
  const double kh = k * depth;
  const double s = (kh < 350.0) ? 2.0 * kh / std::sinh(2.0 * kh) : 0.0;
  return 0.5 * (omega / k) * (1.0 + s);
}

std::vector<double> evanescent_wavenumbers(double omega, double depth, int n) {
  if (!(omega > 0.0) || !(depth > 0.0) || n < 0)
    throw InvalidArgument("evanescent_wavenumbers: omega, depth > 0 and n >= 0");
  const double g = kGravity;
  const double w2 = omega * omega;
  std::vector<double> roots;
  roots.reserve(n);
  for (int m = 1; m <= n; ++m) {
    // f(k) = w2 + g k tan(kh) rises from -inf to w2 on ((m-1/2)pi/h, m pi/h).
    double lo = ((m - 0.5) * kPi + 1e-12) / depth;
    double hi = (m * kPi - 1e-12) / depth;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      const double f = w2 + g * mid * std::tan(mid * depth);
      (f < 0.0 ? lo : hi) = mid;
    }
    roots.push_back(0.5 * (lo + hi));
  }
  return roots;
}

}  // namespace wecfarm
