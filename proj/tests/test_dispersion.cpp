#include <cmath>

#include "doctest.h"
#include "wecfarm/constants.hpp"
#include "wecfarm/dispersion.hpp"
#include "wecfarm/errors.hpp"

using namespace wecfarm;

TEST_CASE("dispersion residual is tiny across regimes") {
  for (double w : {0.1, 0.3, 0.8, 1.5, 3.0})
    for (double h : {5.0, 20.0, 50.0, 500.0}) {
      const double k = wavenumber(w, h);
      const double resid = w * w - kGravity * k * std::tanh(k * h);
      CHECK(std::abs(resid) < 1e-10 * w * w);
    }
}

TEST_CASE("deep water limit k = w^2/g") {
  const double w = 2.0;
  const double k = wavenumber(w, 5000.0);
  CHECK(k == doctest::Approx(w * w / kGravity).epsilon(1e-9));
  CHECK(group_velocity(w, 5000.0) == doctest::Approx(kGravity / (2.0 * w)).epsilon(1e-6));
}

TEST_CASE("shallow water limit c_g -> sqrt(g h)") {
  const double w = 0.05, h = 5.0;
  CHECK(group_velocity(w, h) ==
        doctest::Approx(std::sqrt(kGravity * h)).epsilon(1e-3));
}

TEST_CASE("evanescent roots satisfy their branch equation") {
  const double w = 0.8, h = 50.0;
  const auto roots = evanescent_wavenumbers(w, h, 30);
  REQUIRE(roots.size() == 30);
  for (std::size_t m = 0; m < roots.size(); ++m) {
    const double k = roots[m];
    const double lo = (m + 0.5) * kPi / h;
    const double hi = (m + 1.0) * kPi / h;
    CHECK(k > lo);
    CHECK(k < hi);
    CHECK(std::abs(w * w + kGravity * k * std::tan(k * h)) < 1e-8 * w * w * (m + 1));
  }
}

TEST_CASE("invalid arguments rejected") {
  CHECK_THROWS_AS(wavenumber(0.0, 50.0), InvalidArgument);
  CHECK_THROWS_AS(wavenumber(1.0, -1.0), InvalidArgument);
  CHECK_THROWS_AS(evanescent_wavenumbers(1.0, 50.0, -1), InvalidArgument);
}
