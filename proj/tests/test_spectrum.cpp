#include <cmath>

#include "doctest.h"
#include "wecfarm/errors.hpp"
#include "wecfarm/spectrum.hpp"

using namespace wecfarm;

TEST_CASE("m0 recovers Hs^2/16 across the (Hs, Tp) grid") {
  const FrequencyGrid grid = FrequencyGrid::standard();
  for (double hs : {1.0, 3.0, 5.0})
    for (double tp : {6.0, 9.0, 12.0}) {
      const SpectrumParams params{hs, tp, 3.3};
      const double m0 = spectral_moment(params, grid, 0);
      CHECK(m0 == doctest::Approx(hs * hs / 16.0).epsilon(0.03));
    }
}

TEST_CASE("density peaks at the peak frequency") {
  const SpectrumParams params{2.0, 8.0, 3.3};
  const double wp = params.omega_p();
  const double peak = jonswap_density(wp, params);
  for (double w = 0.2; w < 2.5; w += 0.05)
    CHECK(jonswap_density(w, params) <= peak * (1.0 + 1e-9));
  // A slightly larger gamma sharpens the peak.
  const SpectrumParams sharp{2.0, 8.0, 5.0};
  CHECK(jonswap_density(wp, sharp) > peak);
}

TEST_CASE("gamma = 1 still integrates to Hs^2/16") {
  const SpectrumParams params{3.0, 9.0, 1.0};
  const double m0 = spectral_moment(params, FrequencyGrid::standard(), 0);
  CHECK(m0 == doctest::Approx(9.0 / 16.0).epsilon(0.03));
}

TEST_CASE("moments increase with order scaled by frequency") {
  const SpectrumParams params{2.0, 8.0, 3.3};
  const FrequencyGrid grid = FrequencyGrid::standard();
  const double m0 = spectral_moment(params, grid, 0);
  const double m1 = spectral_moment(params, grid, 1);
  const double m2 = spectral_moment(params, grid, 2);
  // Mean frequency sits near the peak; second moment is consistent (Cauchy-Schwarz).
  CHECK(m1 / m0 > params.omega_p());
  CHECK(m1 / m0 < 2.0 * params.omega_p());
  CHECK(m2 * m0 >= m1 * m1);
}

TEST_CASE("parameter validation") {
  const SpectrumParams bad_hs{-1.0, 8.0, 3.3};
  const SpectrumParams bad_tp{2.0, 0.0, 3.3};
  const SpectrumParams bad_gamma{2.0, 8.0, 0.0};
  const SpectrumParams good{2.0, 8.0, 3.3};
  CHECK_THROWS_AS(bad_hs.validate(), InvalidArgument);
  CHECK_THROWS_AS(bad_tp.validate(), InvalidArgument);
  CHECK_THROWS_AS(bad_gamma.validate(), InvalidArgument);
  CHECK_THROWS_AS(spectral_moment(good, FrequencyGrid::standard(), 3),
                  InvalidArgument);
  CHECK_THROWS_AS(FrequencyGrid::linspace(1.0, 0.5, 10).validate(), InvalidArgument);
}

TEST_CASE("regular wave basics") {
  const RegularWave wave(2.0, 10.0);
  CHECK(wave.amplitude() == doctest::Approx(1.0));
  CHECK(wave.omega() == doctest::Approx(2.0 * 3.14159265358979 / 10.0));
  CHECK_THROWS_AS(RegularWave(-1.0, 10.0), InvalidArgument);
  CHECK_THROWS_AS(RegularWave(2.0, 0.0), InvalidArgument);
}

TEST_CASE("standard grid covers the default band") {
  const FrequencyGrid grid = FrequencyGrid::standard();
  REQUIRE(grid.size() == 120);
  CHECK(grid.omegas.front() == doctest::Approx(0.1));
  CHECK(grid.omegas.back() == doctest::Approx(3.0));
}
