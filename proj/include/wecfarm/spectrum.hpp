#pragma once

#include <vector>

namespace wecfarm {

// JONSWAP sea-state parameters.
struct SpectrumParams {
  double hs;            // significant wave height [m]
  double tp;            // peak period [s]
  double gamma = 3.3;   // peak-enhancement factor

  void validate() const;
  double omega_p() const;  // peak angular frequency 2*pi/tp
};

// Strictly increasing angular-frequency discretization [rad/s].
struct FrequencyGrid {
  std::vector<double> omegas;

  static FrequencyGrid linspace(double w0, double w1, int n);
  // Default band covering the energetic range of all default sea states.
  static FrequencyGrid standard();

  void validate() const;
  std::size_t size() const { return omegas.size(); }
};

// A single-frequency wave; usable wherever a sea state is accepted.
struct RegularWave {
  double height;  // trough-to-crest [m]
  double period;  // [s]

  RegularWave(double height_m, double period_s);
  double amplitude() const { return height / 2.0; }
  double omega() const;
};

// Goda-normalized JONSWAP spectral density S(omega) [m^2 s/rad].
double jonswap_density(double omega, const SpectrumParams& params);

// Trapezoidal spectral moment m_n = integral of omega^n S(omega), n in {0,1,2}.
double spectral_moment(const SpectrumParams& params, const FrequencyGrid& grid, int n);

}  // namespace wecfarm
