#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace wecfarm {

struct SeaStateBin {
  double hs;    // [m]
  double tp;    // [s]
  double prob;  // probability mass within its year
};

struct YearBins {
  int year = 0;
  std::vector<SeaStateBin> bins;
};

// Multi-year joint (Hs, Tp) probability climate for one site.
struct SiteClimate {
  std::string site_id;
  std::vector<YearBins> years;

  int n_yr() const { return static_cast<int>(years.size()); }
  void validate() const;  // per-year sum(prob) == 1 within 1e-6

  double mean_hs() const;
  double mean_tp() const;
  // Probability-weighted Hs^2*Tp, a proxy for incident energy flux.
  double mean_energy_flux_proxy() const;

  // Modal (Hs, Tp): bin with the largest year-averaged probability mass.
  SeaStateBin modal_bin() const;

  // Collapse the yearly distributions into a single year-averaged one.
  std::vector<SeaStateBin> averaged_bins() const;
};

// Default rectangular sea-state grid axes.
std::vector<double> default_tp_axis();  // {3,4,...,17} s
std::vector<double> default_hs_axis();  // {0.5,1.0,...,9.5} m

// CSV schema: header "year,hs_m,tp_s,prob", one row per bin.
SiteClimate load_site_climate(std::istream& in, const std::string& site_id = "csv");
SiteClimate load_site_climate_file(const std::string& path);
void save_site_climate(const SiteClimate& climate, std::ostream& out);
void save_site_climate_file(const SiteClimate& climate, const std::string& path);

enum class ClimateProfile { kHighEnergy, kLowEnergy };

ClimateProfile climate_profile_from_string(const std::string& name);
std::string to_string(ClimateProfile profile);

// Profile targets for the synthetic generators (module constants, not data).
struct ProfileTargets {
  double mean_hs;  // [m]
  double mean_tp;  // [s]
};
ProfileTargets profile_targets(ClimateProfile profile);

// 30-year synthetic climate: discretized truncated bivariate normal on the
// default grid with +-5% per-year mean jitter. Deterministic in (profile, seed).
SiteClimate synth_site_climate(ClimateProfile profile, std::uint64_t seed);

}  // namespace wecfarm
