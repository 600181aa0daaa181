#include "wecfarm/farm.hpp"

#include <cmath>

#include "wecfarm/constants.hpp"
#include "wecfarm/errors.hpp"
#include "wecfarm/hydro_cache.hpp"
#include "wecfarm/util.hpp"

namespace wecfarm {

namespace {

constexpr double kBinTol = 1e-9;

bool same_bin(double a, double b) { return std::abs(a - b) <= kBinTol; }

// Climate-weighted per-farm power straight from the response table; bins are
// integrated on demand so no grid coverage is required.
double weighted_farm_power(const FarmResponse& response, const PtoParams& pto,
                           const SiteClimate& climate,
                           std::optional<double> p_limit) {
  double total = 0.0;
  for (const auto& year : climate.years) {
    double yearly = 0.0;
    for (const auto& bin : year.bins) {
      const Eigen::VectorXd p = seastate_power_from_response(response, pto, bin);
      double farm = 0.0;
      for (Eigen::Index i = 0; i < p.size(); ++i)
        farm += p_limit ? std::min(p(i), *p_limit) : p(i);
      yearly += bin.prob * farm;
    }
    total += yearly;
  }
  return total / climate.n_yr();
}

FarmDesign single_device(const FarmDesign& design) {
  FarmDesign one = design;
  one.layout = {{0.0, 0.0}};
  return one;
}

EvalContext isolated_ctx(const EvalContext& ctx) {
  EvalContext c = ctx;
  c.backend.variant = BackendVariant::kIsolated;
  return c;
}

}  // namespace

void PtoParams::validate() const {
  if (!(b_pto >= 0.0)) throw InvalidArgument("PtoParams: b_pto must be >= 0");
  if (!std::isfinite(k_pto)) throw InvalidArgument("PtoParams: k_pto must be finite");
}

void FarmDesign::validate() const {
  geom.validate();
  pto.validate();
  if (layout.empty()) throw InvalidArgument("FarmDesign: layout must not be empty");
}

Eigen::VectorXcd solve_motion(const FarmDesign& design, const HydroSet& hydro,
                              double omega) {
  design.validate();
  const int n = hydro.size();
  if (n != design.n_wec())
    throw InvalidArgument("solve_motion: HydroSet size does not match layout");

  const double mass = design.geom.mass();
  const double stiff = design.geom.hydrostatic_stiffness();
  Eigen::MatrixXcd z =
      (-omega * omega * (mass * Eigen::MatrixXd::Identity(n, n) + hydro.added_mass) +
       (stiff + design.pto.k_pto) * Eigen::MatrixXd::Identity(n, n))
          .cast<std::complex<double>>();
  z += std::complex<double>(0.0, omega) *
       (hydro.damping +
        design.pto.b_pto * Eigen::MatrixXd::Identity(n, n))
           .cast<std::complex<double>>();

  const double xnorm = hydro.excitation.norm();
  if (xnorm == 0.0) return Eigen::VectorXcd::Zero(n);

  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(z);
  Eigen::VectorXcd xi = lu.solve(hydro.excitation);
  const double resid = (z * xi - hydro.excitation).norm();
  if (!xi.allFinite() || resid > 1e-10 * xnorm)
    throw SolverError("solve_motion: singular or ill-conditioned impedance at omega=" +
                      std::to_string(omega));
  return xi;
}

Eigen::VectorXd device_power_regular(const FarmDesign& design, const HydroSet& hydro,
                                     double omega, double amplitude) {
  if (!(amplitude > 0.0))
    throw InvalidArgument("device_power_regular: amplitude must be > 0");
  const Eigen::VectorXcd xi = solve_motion(design, hydro, omega);
  Eigen::VectorXd p(xi.size());
  for (Eigen::Index i = 0; i < xi.size(); ++i)
    p(i) = 0.5 * design.pto.b_pto * omega * omega * std::norm(xi(i)) *
           amplitude * amplitude;
  return p;
}

FarmResponse compute_response(const FarmDesign& design, const EvalContext& ctx) {
  design.validate();
  ctx.grid.validate();
  FarmResponse out;
  out.grid = ctx.grid;
  out.h2.resize(ctx.grid.size());
  std::vector<char> warn(ctx.grid.size(), 0);
  parallel_for(ctx.grid.size(), ctx.threads, [&](std::size_t i) {
    const double w = ctx.grid.omegas[i];
    const HydroSet hydro = array_hydro(design.layout, design.geom, w, ctx.backend,
                                       ctx.heading, ctx.cache);
    const Eigen::VectorXcd xi = solve_motion(design, hydro, w);
    Eigen::VectorXd h2(xi.size());
    for (Eigen::Index j = 0; j < xi.size(); ++j) h2(j) = std::norm(xi(j));
    out.h2[i] = std::move(h2);
    warn[i] = hydro.convergence_warning ? 1 : 0;
  });
  for (char w : warn) out.convergence_warning |= (w != 0);
  return out;
}

Eigen::VectorXd seastate_power_from_response(const FarmResponse& response,
                                             const PtoParams& pto,
                                             const SeaStateBin& bin) {
  const auto& w = response.grid.omegas;
  const SpectrumParams sp{bin.hs, bin.tp, 3.3};
  const int n = static_cast<int>(response.h2.front().size());
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd prev =
      w[0] * w[0] * jonswap_density(w[0], sp) * response.h2[0];
  for (std::size_t i = 1; i < w.size(); ++i) {
    Eigen::VectorXd cur = w[i] * w[i] * jonswap_density(w[i], sp) * response.h2[i];
    acc += 0.5 * (prev + cur) * (w[i] - w[i - 1]);
    prev = std::move(cur);
  }
  return pto.b_pto * acc;
}

Eigen::VectorXd seastate_power(const FarmDesign& design, const SeaStateBin& bin,
                               const EvalContext& ctx) {
  const FarmResponse response = compute_response(design, ctx);
  return seastate_power_from_response(response, design.pto, bin);
}

const PowerMatrixEntry& PowerMatrix::at(double hs, double tp) const {
  for (const auto& e : entries)
    if (same_bin(e.hs, hs) && same_bin(e.tp, tp)) return e;
  throw CoverageError("PowerMatrix: bin (hs=" + std::to_string(hs) +
                      ", tp=" + std::to_string(tp) + ") not covered by the grid");
}

PowerMatrix power_matrix(const FarmDesign& design, const std::vector<double>& hs_axis,
                         const std::vector<double>& tp_axis,
                         std::optional<double> p_limit, const EvalContext& ctx) {
  if (p_limit && *p_limit < 0.0)
    throw InvalidArgument("power_matrix: p_limit must be >= 0");
  const FarmResponse response = compute_response(design, ctx);

  PowerMatrix pm;
  pm.hs_axis = hs_axis;
  pm.tp_axis = tp_axis;
  pm.p_limit = p_limit;
  pm.entries.reserve(hs_axis.size() * tp_axis.size());
  for (double hs : hs_axis)
    for (double tp : tp_axis) {
      PowerMatrixEntry e;
      e.hs = hs;
      e.tp = tp;
      e.device_unsat = seastate_power_from_response(response, design.pto,
                                                    {hs, tp, 1.0});
      e.device_sat = e.device_unsat;
      if (p_limit)
        for (Eigen::Index i = 0; i < e.device_sat.size(); ++i)
          e.device_sat(i) = std::min(e.device_sat(i), *p_limit);
      e.farm_unsat = e.device_unsat.sum();
      e.farm_sat = e.device_sat.sum();
      pm.entries.push_back(std::move(e));
    }
  return pm;
}

double weighted_power(const PowerMatrix& pm, const SiteClimate& climate,
                      bool use_saturated) {
  double total = 0.0;
  for (const auto& year : climate.years) {
    double yearly = 0.0;
    for (const auto& bin : year.bins) {
      if (bin.prob == 0.0) continue;
      const PowerMatrixEntry& e = pm.at(bin.hs, bin.tp);
      yearly += bin.prob * (use_saturated ? e.farm_sat : e.farm_unsat);
    }
    total += yearly;
  }
  return total / climate.n_yr();
}

double objective_pv(const FarmDesign& design, const SiteClimate& climate,
                    std::optional<double> p_limit, const EvalContext& ctx) {
  const FarmResponse response = compute_response(design, ctx);
  const double p = weighted_farm_power(response, design.pto, climate, p_limit);
  return p / (design.n_wec() * design.geom.volume());
}

double q_factor(const FarmDesign& design, const SiteClimate& climate,
                const EvalContext& ctx) {
  const FarmResponse farm = compute_response(design, ctx);
  const FarmResponse single =
      compute_response(single_device(design), isolated_ctx(ctx));
  const double p_farm = weighted_farm_power(farm, design.pto, climate, std::nullopt);
  const double p_single =
      weighted_farm_power(single, design.pto, climate, std::nullopt);
  if (p_single == 0.0)
    throw SolverError("q_factor: single-device power is zero (degenerate denominator)");
  return p_farm / (design.n_wec() * p_single);
}

double q_factor_regular(const FarmDesign& design, const RegularWave& wave,
                        const EvalContext& ctx) {
  const double w = wave.omega();
  const HydroSet farm_hydro = array_hydro(design.layout, design.geom, w,
                                          ctx.backend, ctx.heading, ctx.cache);
  const double p_farm =
      device_power_regular(design, farm_hydro, w, wave.amplitude()).sum();

  const FarmDesign one = single_device(design);
  const EvalContext iso = isolated_ctx(ctx);
  const HydroSet one_hydro =
      array_hydro(one.layout, one.geom, w, iso.backend, iso.heading, iso.cache);
  const double p_single =
      device_power_regular(one, one_hydro, w, wave.amplitude()).sum();
  if (p_single == 0.0)
    throw SolverError("q_factor_regular: single-device power is zero");
  return p_farm / (design.n_wec() * p_single);
}

std::optional<double> natural_frequency(
    double mass, double hydrostatic, double k_pto,
    const std::function<double(double)>& added_mass) {
  const double net_stiffness = k_pto + hydrostatic;
  if (!(net_stiffness > 0.0)) return std::nullopt;

  double w = std::sqrt(net_stiffness / mass);
  for (int it = 0; it < 200; ++it) {
    const double denom = mass + added_mass(w);
    if (!(denom > 0.0))
      throw SolverError("natural_frequency: non-positive inertia");
    const double next = std::sqrt(net_stiffness / denom);
    const double damped = 0.5 * (w + next);
    if (std::abs(damped - w) < 1e-8) return damped;
    w = damped;
  }
  throw SolverError("natural_frequency: fixed point did not converge in 200 iterations");
}

std::optional<double> natural_frequency(const FarmDesign& design,
                                        const EvalContext& ctx) {
  auto added = [&](double w) {
    return cached_isolated_modal(design.geom, w, ctx.backend, ctx.cache).added_mass;
  };
  return natural_frequency(design.geom.mass(), design.geom.hydrostatic_stiffness(),
                           design.pto.k_pto, added);
}

double rated_power(const PowerMatrix& pm, const SiteClimate& climate) {
  const auto avg = climate.averaged_bins();
  double rated = 0.0;
  for (const auto& bin : avg) {
    if (bin.prob == 0.0) continue;
    rated = std::max(rated, pm.at(bin.hs, bin.tp).farm_sat);
  }
  return rated;
}

double capacity_factor(double weighted_power_w, double rated_w) {
  if (!(rated_w > 0.0))
    throw InvalidArgument("capacity_factor: rated power must be > 0");
  return weighted_power_w / rated_w;
}

PerformanceReport evaluate_performance(const FarmDesign& design,
                                       const SiteClimate& climate,
                                       std::optional<double> p_limit,
                                       const EvalContext& ctx,
                                       std::optional<double> rated) {
  PerformanceReport report;
  report.n_wec = design.n_wec();

  const FarmResponse farm = compute_response(design, ctx);
  const FarmResponse single =
      compute_response(single_device(design), isolated_ctx(ctx));

  report.weighted_power_w = weighted_farm_power(farm, design.pto, climate, p_limit);
  report.weighted_power_unsat_w =
      weighted_farm_power(farm, design.pto, climate, std::nullopt);
  report.pv = report.weighted_power_w / (design.n_wec() * design.geom.volume());

  const double p_single =
      weighted_farm_power(single, design.pto, climate, std::nullopt);
  report.q = (p_single > 0.0)
                 ? report.weighted_power_unsat_w / (design.n_wec() * p_single)
                 : 0.0;
  const double p_single_sat =
      weighted_farm_power(single, design.pto, climate, p_limit);
  report.q_saturated =
      (p_single_sat > 0.0)
          ? report.weighted_power_w / (design.n_wec() * p_single_sat)
          : 0.0;

  report.omega_n = natural_frequency(design, ctx);
  if (rated) report.capacity = capacity_factor(report.weighted_power_w, *rated);

  // Per-device climate-weighted power, saturated.
  Eigen::VectorXd dev = Eigen::VectorXd::Zero(design.n_wec());
  for (const auto& year : climate.years)
    for (const auto& bin : year.bins) {
      Eigen::VectorXd p = seastate_power_from_response(farm, design.pto, bin);
      for (Eigen::Index i = 0; i < p.size(); ++i)
        dev(i) += bin.prob * (p_limit ? std::min(p(i), *p_limit) : p(i));
    }
  report.device_weighted_w = dev / climate.n_yr();
  return report;
}

}  // namespace wecfarm
