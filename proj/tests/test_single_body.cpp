#include <cmath>
#include <complex>

#include "doctest.h"
#include "wecfarm/constants.hpp"
#include "wecfarm/dispersion.hpp"
#include "wecfarm/single_body.hpp"

using namespace wecfarm;

namespace {

// Axisymmetric heave bodies obey b = k |X|^2 / (4 rho g v_g); used as the
// independent oracle for both the radiation and diffraction solves.
double haskind_damping(double omega, double depth, std::complex<double> X) {
  const double k = wavenumber(omega, depth);
  const double vg = group_velocity(omega, depth);
  return k * std::norm(X) / (4.0 * kRhoWater * kGravity * vg);
}

}  // namespace

TEST_CASE("radiation damping matches the Haskind identity") {
  for (double radius : {2.0, 4.0})
    for (double draft : {1.0, 3.0})
      for (double omega : {0.4, 0.8, 1.2}) {
        const CylinderGeometry geom{radius, radius / draft, 50.0};
        const SingleBodyCoeffs c = isolated_heave_coefficients(geom, omega);
        CHECK(c.radiation_damping ==
              doctest::Approx(haskind_damping(omega, geom.depth, c.excitation))
                  .epsilon(1e-8));
      }
}

TEST_CASE("low-frequency excitation approaches the Froude-Krylov limit") {
  // Shallow draft, long wave: |X| -> rho g pi R^2 (hydrostatic pressure on
  // the base), and b follows from the Haskind identity.
  const CylinderGeometry geom{2.0, 4.0, 50.0};  // D = 0.5 m
  const double omega = 0.15;
  const SingleBodyCoeffs c = isolated_heave_coefficients(geom, omega);
  const double fk = kRhoWater * kGravity * kPi * geom.radius * geom.radius;
  CHECK(std::abs(c.excitation) == doctest::Approx(fk).epsilon(0.02));
  CHECK(c.radiation_damping ==
        doctest::Approx(haskind_damping(omega, geom.depth,
                                        std::complex<double>(fk, 0.0)))
            .epsilon(0.05));
}

TEST_CASE("truncation convergence: doubling the depth modes barely moves a, b") {
  const CylinderGeometry geom{3.0, 2.0, 50.0};
  const double omega = 0.8;
  const IsolatedModal lo = solve_isolated_modal(geom, omega, 40, 0);
  const IsolatedModal hi = solve_isolated_modal(geom, omega, 80, 0);
  CHECK(lo.added_mass == doctest::Approx(hi.added_mass).epsilon(5e-3));
  CHECK(lo.radiation_damping ==
        doctest::Approx(hi.radiation_damping).epsilon(5e-3));
  CHECK(std::abs(lo.excitation - hi.excitation) <
        5e-3 * std::abs(hi.excitation));
}

TEST_CASE("coefficients are physical") {
  for (double omega : {0.3, 0.7, 1.1, 1.8}) {
    const CylinderGeometry geom{3.0, 2.0, 50.0};
    const SingleBodyCoeffs c = isolated_heave_coefficients(geom, omega);
    CHECK(c.added_mass > 0.0);
    CHECK(c.radiation_damping > 0.0);
    CHECK(std::abs(c.excitation) > 0.0);
  }
}

TEST_CASE("deep site: depth stops mattering for short waves") {
  const double omega = 1.5;  // deep-water wave at both depths
  const CylinderGeometry g50{3.0, 2.0, 50.0};
  const CylinderGeometry g100{3.0, 2.0, 100.0};
  // Depth modes resolve a fixed vertical wavelength, so the mode count is
  // scaled with the depth to compare equal physical resolutions.
  const IsolatedModal a = solve_isolated_modal(g50, omega, 80, 0);
  const IsolatedModal b = solve_isolated_modal(g100, omega, 160, 0);
  CHECK(a.added_mass == doctest::Approx(b.added_mass).epsilon(1e-2));
  CHECK(a.radiation_damping ==
        doctest::Approx(b.radiation_damping).epsilon(1e-2));
  CHECK(std::abs(a.excitation) ==
        doctest::Approx(std::abs(b.excitation)).epsilon(1e-2));
}

TEST_CASE("modal solution carries consistent far-field data") {
  const CylinderGeometry geom{3.0, 2.0, 50.0};
  const double omega = 0.8;
  const IsolatedModal modal = solve_isolated_modal(geom, omega, 40, 2);
  REQUIRE(modal.transfer.size() == 3);
  CHECK(modal.wavenumber == doctest::Approx(wavenumber(omega, geom.depth)));
  // Excitation equals force-per-mode times the plane-wave projection factor.
  const std::complex<double> via_modes =
      modal.force_per_mode * modal.plane_wave_factor;
  CHECK(std::abs(via_modes - modal.excitation) < 1e-10 * std::abs(modal.excitation));
  CHECK(std::abs(modal.radiated_amplitude) > 0.0);
}
