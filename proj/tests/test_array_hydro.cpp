#include <cmath>
#include <complex>
#include <random>

#include <Eigen/Eigenvalues>

#include "doctest.h"
#include "wecfarm/array_hydro.hpp"
#include "wecfarm/dispersion.hpp"
#include "wecfarm/errors.hpp"
#include "wecfarm/hydro_cache.hpp"
#include "wecfarm/single_body.hpp"

using namespace wecfarm;

namespace {

const CylinderGeometry kGeom{3.0, 2.0, 50.0};

HydroBackend backend(BackendVariant v) {
  HydroBackend b;
  b.variant = v;
  return b;
}

double min_eig(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  return es.eigenvalues().minCoeff();
}

}  // namespace

TEST_CASE("isolated backend has zero coupling and plane-wave phases") {
  const std::vector<Vec2> layout = {{0.0, 0.0}, {80.0, 0.0}, {0.0, 120.0}};
  const double omega = 0.8;
  const HydroSet set =
      array_hydro(layout, kGeom, omega, backend(BackendVariant::kIsolated));
  const SingleBodyCoeffs iso = isolated_heave_coefficients(kGeom, omega);

  for (int p = 0; p < 3; ++p)
    for (int q = 0; q < 3; ++q) {
      if (p == q) {
        CHECK(set.added_mass(p, q) == doctest::Approx(iso.added_mass));
        CHECK(set.damping(p, q) == doctest::Approx(iso.radiation_damping));
      } else {
        CHECK(set.added_mass(p, q) == 0.0);
        CHECK(set.damping(p, q) == 0.0);
      }
    }
  // X_j = X_iso * exp(-i k x_j) for heading 0 in the exp(+i w t) convention.
  const double k = wavenumber(omega, kGeom.depth);
  for (int j = 0; j < 3; ++j) {
    const std::complex<double> expected =
        iso.excitation * std::exp(std::complex<double>(0.0, -k * layout[j].x));
    CHECK(std::abs(set.excitation(j) - expected) < 1e-9 * std::abs(expected));
  }
}

TEST_CASE("pa backend reproduces its Bessel kernels") {
  const double omega = 0.8;
  const double d = 75.0;
  const std::vector<Vec2> layout = {{0.0, 0.0}, {d, 0.0}};
  const HydroSet set = array_hydro(layout, kGeom, omega, backend(BackendVariant::kPa));
  const SingleBodyCoeffs iso = isolated_heave_coefficients(kGeom, omega);
  const double k = wavenumber(omega, kGeom.depth);

  CHECK(set.damping(0, 1) ==
        doctest::Approx(iso.radiation_damping * std::cyl_bessel_j(0, k * d)));
  CHECK(set.added_mass(0, 1) ==
        doctest::Approx(-iso.radiation_damping * std::cyl_neumann(0, k * d) / omega));
  CHECK(set.damping(0, 1) == set.damping(1, 0));
  CHECK(set.added_mass(0, 1) == set.added_mass(1, 0));
}

TEST_CASE("ms backend: single body equals the isolated solution") {
  const double omega = 0.8;
  const HydroSet ms = array_hydro({{0.0, 0.0}}, kGeom, omega,
                                  backend(BackendVariant::kMs));
  const SingleBodyCoeffs iso = isolated_heave_coefficients(kGeom, omega);
  CHECK(ms.added_mass(0, 0) == doctest::Approx(iso.added_mass).epsilon(1e-10));
  CHECK(ms.damping(0, 0) == doctest::Approx(iso.radiation_damping).epsilon(1e-10));
  CHECK(std::abs(ms.excitation(0) - iso.excitation) <
        1e-10 * std::abs(iso.excitation));
}

TEST_CASE("ms and pa agree on well-separated pairs") {
  const double omega = 0.8;
  // 75 m keeps k*d away from the J0/Y0 zeros where a relative comparison
  // of near-zero couplings would be meaningless.
  const std::vector<Vec2> layout = {{0.0, 0.0}, {75.0, 0.0}};
  const HydroSet ms = array_hydro(layout, kGeom, omega, backend(BackendVariant::kMs));
  const HydroSet pa = array_hydro(layout, kGeom, omega, backend(BackendVariant::kPa));
  const double scale = pa.damping(0, 0);
  CHECK(std::abs(ms.damping(0, 1) - pa.damping(0, 1)) < 0.03 * scale);
  CHECK(std::abs(ms.added_mass(0, 1) - pa.added_mass(0, 1)) < 0.05 * scale / omega);
  // Excitation phase follows the incident wave between the bodies.
  const double k = wavenumber(omega, kGeom.depth);
  const double dphi =
      std::arg(ms.excitation(1)) - std::arg(ms.excitation(0)) + k * 75.0;
  const double wrapped = std::remainder(dphi, 2.0 * 3.14159265358979323846);
  CHECK(std::abs(wrapped) < 0.15);
}

TEST_CASE("random layouts: symmetry and positive semidefinite damping") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> nd(2, 5);
  std::uniform_real_distribution<double> pos(-300.0, 300.0);
  for (BackendVariant v :
       {BackendVariant::kIsolated, BackendVariant::kPa, BackendVariant::kMs}) {
    for (int trial = 0; trial < 5; ++trial) {
      const int n = nd(rng);
      std::vector<Vec2> layout;
      while (static_cast<int>(layout.size()) < n) {
        const Vec2 p{pos(rng), pos(rng)};
        bool ok = true;
        for (const Vec2& q : layout)
          if (std::hypot(p.x - q.x, p.y - q.y) < 2.0 * kGeom.radius + 10.0)
            ok = false;
        if (ok) layout.push_back(p);
      }
      const HydroSet set = array_hydro(layout, kGeom, 0.9, backend(v));
      CHECK((set.added_mass - set.added_mass.transpose()).norm() <=
            1e-9 * set.added_mass.norm());
      CHECK((set.damping - set.damping.transpose()).norm() <=
            1e-9 * set.damping.norm());
      CHECK(min_eig(set.damping) >= -1e-8 * set.damping.norm());
    }
  }
}

TEST_CASE("overlapping bodies are rejected") {
  const std::vector<Vec2> layout = {{0.0, 0.0}, {5.0, 0.0}};  // d < 2R
  CHECK_THROWS_AS(array_hydro(layout, kGeom, 0.8, backend(BackendVariant::kPa)),
                  GeometryError);
}

TEST_CASE("cache round trip leaves results identical") {
  HydroCache cache;
  const std::vector<Vec2> layout = {{0.0, 0.0}, {70.0, 30.0}};
  const HydroBackend b = backend(BackendVariant::kMs);
  const HydroSet cold = array_hydro(layout, kGeom, 0.8, b, 0.0, &cache);
  CHECK(cache.size() > 0);
  const HydroSet warm = array_hydro(layout, kGeom, 0.8, b, 0.0, &cache);
  CHECK((cold.added_mass - warm.added_mass).norm() == 0.0);
  CHECK((cold.damping - warm.damping).norm() == 0.0);
  CHECK((cold.excitation - warm.excitation).norm() == 0.0);
}

TEST_CASE("heading rotates the excitation phases only") {
  const std::vector<Vec2> layout = {{0.0, 0.0}, {90.0, 0.0}};
  const double omega = 0.8;
  const HydroSet head0 =
      array_hydro(layout, kGeom, omega, backend(BackendVariant::kPa), 0.0);
  const HydroSet head90 =
      array_hydro(layout, kGeom, omega, backend(BackendVariant::kPa),
                  std::acos(-1.0) / 2.0);
  CHECK((head0.added_mass - head90.added_mass).norm() == 0.0);
  CHECK((head0.damping - head90.damping).norm() == 0.0);
  // Broadside incidence: both bodies see the same phase.
  CHECK(std::abs(head90.excitation(0) - head90.excitation(1)) <
        1e-9 * std::abs(head90.excitation(0)));
}
