#pragma once

#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "wecfarm/array_hydro.hpp"
#include "wecfarm/climate.hpp"
#include "wecfarm/geometry.hpp"
#include "wecfarm/spectrum.hpp"

namespace wecfarm {

class HydroCache;

// Linear power take-off, uniform across the farm.
struct PtoParams {
  double b_pto;  // damping [N s/m], >= 0
  double k_pto;  // stiffness [N/m]

  void validate() const;
};

// Geometry + PTO + planar layout. Power metrics are invariant under rigid
// translation; the optimizer's variable encoding pins body 1 at the origin.
struct FarmDesign {
  CylinderGeometry geom;
  PtoParams pto;
  std::vector<Vec2> layout;

  int n_wec() const { return static_cast<int>(layout.size()); }
  void validate() const;
};

// Evaluation context shared by the power operations.
struct EvalContext {
  HydroBackend backend;
  FrequencyGrid grid = FrequencyGrid::standard();
  double heading = 0.0;
  HydroCache* cache = nullptr;
  int threads = 1;
};

// Complex heave displacement per unit wave amplitude at one frequency.
// Solves [-w^2 (M + A) + i w (B + b_pto I) + (G + k_pto) I] xi = X.
Eigen::VectorXcd solve_motion(const FarmDesign& design, const HydroSet& hydro,
                              double omega);

// Mean absorbed power per device in a regular wave [W].
Eigen::VectorXd device_power_regular(const FarmDesign& design, const HydroSet& hydro,
                                     double omega, double amplitude);

// Per-frequency squared response magnitudes |H_i(w)|^2, precomputed once per
// design so sea-state integrals are cheap weighted sums.
struct FarmResponse {
  FrequencyGrid grid;
  std::vector<Eigen::VectorXd> h2;  // per frequency, per device
  bool convergence_warning = false;
};

FarmResponse compute_response(const FarmDesign& design, const EvalContext& ctx);

// Spectral per-device mean power for one sea state [W].
Eigen::VectorXd seastate_power(const FarmDesign& design, const SeaStateBin& bin,
                               const EvalContext& ctx);
Eigen::VectorXd seastate_power_from_response(const FarmResponse& response,
                                             const PtoParams& pto,
                                             const SeaStateBin& bin);

// Device/farm power tabulated over a rectangular (Hs, Tp) grid, before and
// after saturation at p_limit (per device per sea state).
struct PowerMatrixEntry {
  double hs;
  double tp;
  Eigen::VectorXd device_unsat;  // [W]
  Eigen::VectorXd device_sat;
  double farm_unsat = 0.0;
  double farm_sat = 0.0;
};

struct PowerMatrix {
  std::vector<double> hs_axis;
  std::vector<double> tp_axis;
  std::vector<PowerMatrixEntry> entries;  // row-major over (hs, tp)
  std::optional<double> p_limit;

  const PowerMatrixEntry& at(double hs, double tp) const;  // CoverageError if absent
};

PowerMatrix power_matrix(const FarmDesign& design, const std::vector<double>& hs_axis,
                         const std::vector<double>& tp_axis,
                         std::optional<double> p_limit, const EvalContext& ctx);

// Climate-weighted farm mean power P = (1/n_yr) sum_years sum_bins prob * P_farm.
double weighted_power(const PowerMatrix& pm, const SiteClimate& climate,
                      bool use_saturated = true);

// Objective p_v = weighted_power / (n_wec * pi R^2 D)  [W/m^3].
double objective_pv(const FarmDesign& design, const SiteClimate& climate,
                    std::optional<double> p_limit, const EvalContext& ctx);

// q = P_farm / (n * P_single_isolated), both unsaturated, same climate.
double q_factor(const FarmDesign& design, const SiteClimate& climate,
                const EvalContext& ctx);
// Regular-wave variant at a single frequency.
double q_factor_regular(const FarmDesign& design, const RegularWave& wave,
                        const EvalContext& ctx);

// Natural frequency from the fixed point w_n = sqrt((k_pto + G)/(M + a(w_n))).
// Returns nullopt when k_pto + G <= 0 (no resonance).
std::optional<double> natural_frequency(double mass, double hydrostatic,
                                        double k_pto,
                                        const std::function<double(double)>& added_mass);
std::optional<double> natural_frequency(const FarmDesign& design,
                                        const EvalContext& ctx);

// Rated power convention: max saturated farm power over the climate's
// populated year-averaged bins, so capacity factor lands in (0, 1].
double rated_power(const PowerMatrix& pm, const SiteClimate& climate);

double capacity_factor(double weighted_power_w, double rated_w);

// Farm-level summary for reports.
struct PerformanceReport {
  double weighted_power_w = 0.0;
  double weighted_power_unsat_w = 0.0;
  double pv = 0.0;
  double q = 0.0;
  double q_saturated = 0.0;
  std::optional<double> omega_n;
  std::optional<double> capacity;
  Eigen::VectorXd device_weighted_w;
  int n_wec = 0;
};

PerformanceReport evaluate_performance(const FarmDesign& design,
                                       const SiteClimate& climate,
                                       std::optional<double> p_limit,
                                       const EvalContext& ctx,
                                       std::optional<double> rated = std::nullopt);

}  // namespace wecfarm
