#include "wecfarm/climate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "wecfarm/errors.hpp"

namespace wecfarm {

namespace {

constexpr double kNormTol = 1e-6;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

}  // namespace

void SiteClimate::validate() const {
  if (years.empty()) throw NormalizationError("SiteClimate: no years");
  for (const auto& y : years) {
    double sum = 0.0;
    for (const auto& b : y.bins) {
      if (b.prob < 0.0 || b.prob > 1.0)
        throw NormalizationError("SiteClimate: prob out of [0,1] in year " +
                                 std::to_string(y.year));
      sum += b.prob;
    }
    if (std::abs(sum - 1.0) > kNormTol)
      throw NormalizationError("SiteClimate: year " + std::to_string(y.year) +
                               " probabilities sum to " + fmt(sum) +
                               ", expected 1 within 1e-6");
  }
}

double SiteClimate::mean_hs() const {
  double acc = 0.0;
  for (const auto& y : years)
    for (const auto& b : y.bins) acc += b.prob * b.hs;
  return acc / n_yr();
}

double SiteClimate::mean_tp() const {
  double acc = 0.0;
  for (const auto& y : years)
    for (const auto& b : y.bins) acc += b.prob * b.tp;
  return acc / n_yr();
}

double SiteClimate::mean_energy_flux_proxy() const {
  double acc = 0.0;
  for (const auto& y : years)
    for (const auto& b : y.bins) acc += b.prob * b.hs * b.hs * b.tp;
  return acc / n_yr();
}

std::vector<SeaStateBin> SiteClimate::averaged_bins() const {
  std::map<std::pair<double, double>, double> mass;
  for (const auto& y : years)
    for (const auto& b : y.bins) mass[{b.hs, b.tp}] += b.prob;
  std::vector<SeaStateBin> out;
  out.reserve(mass.size());
  for (const auto& [key, p] : mass)
    out.push_back({key.first, key.second, p / n_yr()});
  return out;
}

SeaStateBin SiteClimate::modal_bin() const {
  auto avg = averaged_bins();
  if (avg.empty()) throw NormalizationError("SiteClimate: empty climate");
  return *std::max_element(avg.begin(), avg.end(),
                           [](const SeaStateBin& a, const SeaStateBin& b) {
                             return a.prob < b.prob;
                           });
}

std::vector<double> default_tp_axis() {
  std::vector<double> tp;
  for (int t = 3; t <= 17; ++t) tp.push_back(static_cast<double>(t));
  return tp;
}

std::vector<double> default_hs_axis() {
  std::vector<double> hs;
  for (int i = 1; i <= 19; ++i) hs.push_back(0.5 * i);
  return hs;
}

SiteClimate load_site_climate(std::istream& in, const std::string& site_id) {
  std::string line;
  if (!std::getline(in, line))
    throw SchemaError("site climate CSV: empty stream");
  // Tolerate a UTF-8 BOM and trailing CR.
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "year,hs_m,tp_s,prob")
    throw SchemaError("site climate CSV: expected header 'year,hs_m,tp_s,prob', got '" +
                      line + "'");

  std::map<int, YearBins> by_year;
  std::set<std::tuple<int, double, double>> seen;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string cell;
    double vals[4];
    for (int i = 0; i < 4; ++i) {
      if (!std::getline(ss, cell, ','))
        throw SchemaError("site climate CSV line " + std::to_string(lineno) +
                          ": expected 4 columns");
      try {
        std::size_t pos = 0;
        vals[i] = std::stod(cell, &pos);
        if (pos != cell.size()) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw SchemaError("site climate CSV line " + std::to_string(lineno) +
                          ": bad numeric field '" + cell + "'");
      }
    }
    const int year = static_cast<int>(vals[0]);
    const double hs = vals[1], tp = vals[2], prob = vals[3];
    if (!seen.insert({year, hs, tp}).second)
      throw DuplicateBinError("site climate CSV line " + std::to_string(lineno) +
                              ": duplicate bin (year=" + std::to_string(year) +
                              ", hs=" + fmt(hs) + ", tp=" + fmt(tp) + ")");
    if (prob == 0.0) continue;  // zero-mass bins may be dropped
    auto& yb = by_year[year];
    yb.year = year;
    yb.bins.push_back({hs, tp, prob});
  }

  SiteClimate climate;
  climate.site_id = site_id;
  for (auto& [year, yb] : by_year) climate.years.push_back(std::move(yb));
  climate.validate();
  return climate;
}

SiteClimate load_site_climate_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open site climate file: " + path);
  return load_site_climate(in, path);
}

void save_site_climate(const SiteClimate& climate, std::ostream& out) {
  out << "year,hs_m,tp_s,prob\n";
  for (const auto& y : climate.years)
    for (const auto& b : y.bins) {
      char buf[128];
      std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%.17g\n", y.year, b.hs,
                    b.tp, b.prob);
      out << buf;
    }
}

void save_site_climate_file(const SiteClimate& climate, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw SchemaError("cannot open for writing: " + path);
  save_site_climate(climate, out);
}

ClimateProfile climate_profile_from_string(const std::string& name) {
  if (name == "high-energy") return ClimateProfile::kHighEnergy;
  if (name == "low-energy") return ClimateProfile::kLowEnergy;
  throw InvalidArgument("unknown climate profile '" + name +
                        "' (expected high-energy or low-energy)");
}

std::string to_string(ClimateProfile profile) {
  return profile == ClimateProfile::kHighEnergy ? "high-energy" : "low-energy";
}

ProfileTargets profile_targets(ClimateProfile profile) {
  if (profile == ClimateProfile::kHighEnergy) return {2.5, 10.0};
  return {1.2, 7.0};
}

SiteClimate synth_site_climate(ClimateProfile profile, std::uint64_t seed) {
  const ProfileTargets target = profile_targets(profile);
  const double sigma_hs = 0.30 * target.mean_hs;
  const double sigma_tp = 0.15 * target.mean_tp;
  const double corr = 0.5;  // wind seas: higher Hs goes with longer Tp

  const auto hs_axis = default_hs_axis();
  const auto tp_axis = default_tp_axis();

  std::mt19937_64 rng(seed ^ (profile == ClimateProfile::kHighEnergy
                                  ? 0x9e3779b97f4a7c15ull
                                  : 0xc2b2ae3d27d4eb4full));
  std::uniform_real_distribution<double> jitter(-0.05, 0.05);

  SiteClimate climate;
  climate.site_id = to_string(profile) + "-seed" + std::to_string(seed);
  constexpr int kYears = 30;
  for (int y = 1; y <= kYears; ++y) {
    const double mu_hs = target.mean_hs * (1.0 + jitter(rng));
    const double mu_tp = target.mean_tp * (1.0 + jitter(rng));
    YearBins yb;
    yb.year = y;
    double total = 0.0;
    std::vector<SeaStateBin> bins;
    for (double hs : hs_axis)
      for (double tp : tp_axis) {
        const double zh = (hs - mu_hs) / sigma_hs;
        const double zt = (tp - mu_tp) / sigma_tp;
        const double quad =
            (zh * zh - 2.0 * corr * zh * zt + zt * zt) / (1.0 - corr * corr);
        const double w = std::exp(-0.5 * quad);
        if (w < 1e-12) continue;
        bins.push_back({hs, tp, w});
        total += w;
      }
    double sum = 0.0;
    for (auto& b : bins) {
      b.prob /= total;
      sum += b.prob;
    }
    // Absorb rounding into the largest bin so the year sums to 1 exactly.
    auto it = std::max_element(bins.begin(), bins.end(),
                               [](const SeaStateBin& a, const SeaStateBin& b) {
                                 return a.prob < b.prob;
                               });
    it->prob += 1.0 - sum;
    yb.bins = std::move(bins);
    climate.years.push_back(std::move(yb));
  }
  climate.validate();
  return climate;
}

}  // namespace wecfarm
