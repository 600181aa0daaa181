#pragma once

#include <complex>
#include <vector>

#include "wecfarm/geometry.hpp"

namespace wecfarm {

// Heave coefficients of an isolated truncated cylinder at one frequency.
struct SingleBodyCoeffs {
  double omega;                  // [rad/s]
  double added_mass;             // a [kg]
  double radiation_damping;      // b [N s/m], >= 0
  std::complex<double> excitation;  // X, force per unit incident amplitude [N/m]
};

// Full modal solution of the isolated body, as needed by the array backends.
// Internal phase convention: time factor exp(-i omega t), outgoing waves
// carried by the first-kind Hankel function.
struct IsolatedModal {
  double omega = 0.0;
  double wavenumber = 0.0;
  double added_mass = 0.0;
  double radiation_damping = 0.0;
  // Far-field coefficient of H0(k r) Z0(z) radiated per unit heave velocity.
  std::complex<double> radiated_amplitude;
  // Heave force per unit incident partial wave J0(k r) Z0(z).
  std::complex<double> force_per_mode;
  // Plane-wave excitation per unit amplitude (exp(-i omega t) convention).
  std::complex<double> excitation;
  // Scattered H_m coefficient per unit incident J_m coefficient, m = 0..M.
  std::vector<std::complex<double>> transfer;
  // Vertical-mode factor linking unit-amplitude plane wave to Z0(z).
  std::complex<double> plane_wave_factor;
};

// Matched-eigenfunction-expansion solution (interior region under the body,
// exterior free-surface region, n_terms evanescent depth modes).
// max_order is the highest azimuthal order solved for the diffraction
// transfer coefficients; heave force and excitation need only m = 0.
IsolatedModal solve_isolated_modal(const CylinderGeometry& geom, double omega,
                                   int n_terms, int max_order);

// Convenience wrapper returning (a, b, X) with X in the exp(+i omega t)
// convention used by the array assembly and the motion solve.
SingleBodyCoeffs isolated_heave_coefficients(const CylinderGeometry& geom,
                                             double omega, int n_terms = 40);

}  // namespace wecfarm
