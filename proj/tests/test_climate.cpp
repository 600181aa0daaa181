#include <cmath>
#include <sstream>

#include "doctest.h"
#include "wecfarm/climate.hpp"
#include "wecfarm/errors.hpp"

using namespace wecfarm;

TEST_CASE("synthetic climate is deterministic and normalized") {
  const SiteClimate a = synth_site_climate(ClimateProfile::kHighEnergy, 7);
  const SiteClimate b = synth_site_climate(ClimateProfile::kHighEnergy, 7);
  const SiteClimate c = synth_site_climate(ClimateProfile::kHighEnergy, 8);
  REQUIRE(a.n_yr() == 30);
  REQUIRE(a.years.size() == b.years.size());
  bool differs = false;
  for (int y = 0; y < a.n_yr(); ++y) {
    REQUIRE(a.years[y].bins.size() == b.years[y].bins.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < a.years[y].bins.size(); ++i) {
      CHECK(a.years[y].bins[i].prob == b.years[y].bins[i].prob);
      sum += a.years[y].bins[i].prob;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    if (y < c.n_yr() && a.years[y].bins.size() == c.years[y].bins.size()) {
      for (std::size_t i = 0; i < a.years[y].bins.size(); ++i)
        if (a.years[y].bins[i].prob != c.years[y].bins[i].prob) differs = true;
    } else {
      differs = true;
    }
  }
  CHECK(differs);  // different seed, different climate
  CHECK_NOTHROW(a.validate());
}

TEST_CASE("profiles land near their targets and order by energy") {
  const SiteClimate high = synth_site_climate(ClimateProfile::kHighEnergy, 1);
  const SiteClimate low = synth_site_climate(ClimateProfile::kLowEnergy, 1);
  CHECK(high.mean_hs() == doctest::Approx(2.5).epsilon(0.15));
  CHECK(high.mean_tp() == doctest::Approx(10.0).epsilon(0.15));
  CHECK(low.mean_hs() == doctest::Approx(1.2).epsilon(0.15));
  CHECK(low.mean_tp() == doctest::Approx(7.0).epsilon(0.15));
  CHECK(high.mean_energy_flux_proxy() > 2.0 * low.mean_energy_flux_proxy());
}

TEST_CASE("modal bin and averaged bins are consistent") {
  const SiteClimate high = synth_site_climate(ClimateProfile::kHighEnergy, 3);
  const auto avg = high.averaged_bins();
  double sum = 0.0;
  double pmax = 0.0;
  for (const SeaStateBin& b : avg) {
    sum += b.prob;
    pmax = std::max(pmax, b.prob);
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
  const SeaStateBin modal = high.modal_bin();
  bool found = false;
  for (const SeaStateBin& b : avg)
    if (b.hs == modal.hs && b.tp == modal.tp) {
      found = true;
      CHECK(b.prob == doctest::Approx(pmax));
    }
  CHECK(found);
}

TEST_CASE("CSV round trip preserves every bin") {
  const SiteClimate climate = synth_site_climate(ClimateProfile::kLowEnergy, 11);
  std::stringstream buf;
  save_site_climate(climate, buf);
  const SiteClimate back = load_site_climate(buf, climate.site_id);
  REQUIRE(back.n_yr() == climate.n_yr());
  for (int y = 0; y < climate.n_yr(); ++y) {
    REQUIRE(back.years[y].bins.size() == climate.years[y].bins.size());
    for (std::size_t i = 0; i < climate.years[y].bins.size(); ++i) {
      CHECK(back.years[y].bins[i].hs == climate.years[y].bins[i].hs);
      CHECK(back.years[y].bins[i].tp == climate.years[y].bins[i].tp);
      CHECK(back.years[y].bins[i].prob == climate.years[y].bins[i].prob);
    }
  }
}

TEST_CASE("schema errors carry line numbers") {
  std::istringstream missing_col("year,hs_m,tp_s,prob\n1,2.0,8.0\n");
  CHECK_THROWS_AS(load_site_climate(missing_col), SchemaError);

  std::istringstream bad_header("yr,hs,tp,p\n1,2.0,8.0,1.0\n");
  CHECK_THROWS_AS(load_site_climate(bad_header), SchemaError);

  std::istringstream bad_number("year,hs_m,tp_s,prob\n1,2.0,eight,1.0\n");
  try {
    load_site_climate(bad_number);
    FAIL("expected SchemaError");
  } catch (const SchemaError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("tampered probabilities name the offending year") {
  std::istringstream tampered(
      "year,hs_m,tp_s,prob\n"
      "1,2.0,8.0,0.6\n1,3.0,9.0,0.4\n"
      "2,2.0,8.0,0.6\n2,3.0,9.0,0.3\n");
  try {
    load_site_climate(tampered);
    FAIL("expected NormalizationError");
  } catch (const NormalizationError& e) {
    CHECK(std::string(e.what()).find("2") != std::string::npos);
  }
}

TEST_CASE("duplicate bins are rejected") {
  std::istringstream dup(
      "year,hs_m,tp_s,prob\n1,2.0,8.0,0.5\n1,2.0,8.0,0.5\n");
  CHECK_THROWS_AS(load_site_climate(dup), DuplicateBinError);
}

TEST_CASE("default axes match the documented grid") {
  const auto tp = default_tp_axis();
  const auto hs = default_hs_axis();
  REQUIRE(tp.size() == 15);
  REQUIRE(hs.size() == 19);
  CHECK(tp.front() == 3.0);
  CHECK(tp.back() == 17.0);
  CHECK(hs.front() == 0.5);
  CHECK(hs.back() == 9.5);
}
