#include "wecfarm/array_hydro.hpp"

#include <cmath>
#include <complex>

#include "wecfarm/constants.hpp"
#include "wecfarm/errors.hpp"
#include "wecfarm/hydro_cache.hpp"

namespace wecfarm {

namespace {

using cd = std::complex<double>;

// H^(1)_n for integer n of either sign.
cd hankel1(int n, double x) {
  const int m = std::abs(n);
  cd h(std::cyl_bessel_j(double(m), x), std::cyl_neumann(double(m), x));
  if (n < 0 && (m % 2 != 0)) h = -h;
  return h;
}

// Graf translation coefficient: H_n(k r_l) e^{i n th_l} expanded about body j
// as sum_m G(n, m) J_m(k r_j) e^{i m th_j}, valid for r_j < |L|.
// (Lx, Ly) is the vector from body l to body j.
cd graf_coeff(int n, int m, double k, double lx, double ly) {
  const double len = std::hypot(lx, ly);
  const double alpha = std::atan2(ly, lx);
  return hankel1(n - m, k * len) * std::exp(cd(0.0, (n - m) * alpha));
}

void check_layout(const std::vector<Vec2>& layout, double radius) {
  if (layout.empty()) throw GeometryError("array_hydro: empty layout");
  for (std::size_t p = 0; p < layout.size(); ++p)
    for (std::size_t q = p + 1; q < layout.size(); ++q) {
      const double d = std::hypot(layout[p].x - layout[q].x,
                                  layout[p].y - layout[q].y);
      if (d <= 2.0 * radius)
        throw GeometryError("array_hydro: bodies " + std::to_string(p) + " and " +
                            std::to_string(q) + " overlap (distance " +
                            std::to_string(d) + " m, need > " +
                            std::to_string(2.0 * radius) + " m)");
    }
}

struct MsResult {
  Eigen::MatrixXcd impedance_force;  // F_pq per unit velocity of q
  Eigen::VectorXcd excitation;       // internal exp(-i w t) phases
};

// Multiple-scattering interaction solve with partial waves |m| <= order.
MsResult solve_ms(const std::vector<Vec2>& layout, const IsolatedModal& iso,
                  double heading, int order) {
  const int n = static_cast<int>(layout.size());
  const int nm = 2 * order + 1;  // m = -order..order
  const int dim = n * nm;
  const double k = iso.wavenumber;
  auto idx = [&](int body, int m) { return body * nm + (m + order); };
  auto tcoef = [&](int m) { return iso.transfer[std::abs(m)]; };

  // Scattering system: A[j,m] - T_m sum_{l!=j} sum_n A[l,n] G(l->j;n,m) = T_m a[j,m].
  Eigen::MatrixXcd S = Eigen::MatrixXcd::Identity(dim, dim);
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l) {
      if (l == j) continue;
      const double lx = layout[j].x - layout[l].x;
      const double ly = layout[j].y - layout[l].y;
      for (int m = -order; m <= order; ++m)
        for (int nn = -order; nn <= order; ++nn)
          S(idx(j, m), idx(l, nn)) -= tcoef(m) * graf_coeff(nn, m, k, lx, ly);
    }
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(S);

  // Total m = 0 incident coefficient at each body given ambient a and the
  // solved scatterer amplitudes.
  auto incident0 = [&](const Eigen::VectorXcd& ambient0,
                       const Eigen::VectorXcd& amps) {
    Eigen::VectorXcd inc = ambient0;
    for (int p = 0; p < n; ++p)
      for (int l = 0; l < n; ++l) {
        if (l == p) continue;
        const double lx = layout[p].x - layout[l].x;
        const double ly = layout[p].y - layout[l].y;
        for (int nn = -order; nn <= order; ++nn)
          inc(p) += amps(idx(l, nn)) * graf_coeff(nn, 0, k, lx, ly);
      }
    return inc;
  };

  MsResult out;

  // Excitation: ambient plane wave of unit amplitude.
  {
    Eigen::VectorXcd rhs(dim);
    Eigen::VectorXcd ambient0(n);
    const double cb = std::cos(heading), sb = std::sin(heading);
    for (int j = 0; j < n; ++j) {
      const cd phase =
          iso.plane_wave_factor *
          std::exp(cd(0.0, k * (layout[j].x * cb + layout[j].y * sb)));
      ambient0(j) = phase;
      for (int m = -order; m <= order; ++m) {
        const cd am = phase * std::pow(cd(0.0, 1.0), m) *
                      std::exp(cd(0.0, -m * heading));
        rhs(idx(j, m)) = tcoef(m) * am;
      }
    }
    Eigen::VectorXcd amps = lu.solve(rhs);
    out.excitation = iso.force_per_mode * incident0(ambient0, amps).array();
  }

  // Radiation coupling: body q oscillates with unit velocity and radiates
  // radiated_amplitude * H_0(k r_q); everyone scatters the result.
  out.impedance_force.resize(n, n);
  for (int q = 0; q < n; ++q) {
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(dim);
    Eigen::VectorXcd ambient0 = Eigen::VectorXcd::Zero(n);
    for (int j = 0; j < n; ++j) {
      if (j == q) continue;
      const double lx = layout[j].x - layout[q].x;
      const double ly = layout[j].y - layout[q].y;
      for (int m = -order; m <= order; ++m) {
        const cd am = iso.radiated_amplitude * graf_coeff(0, m, k, lx, ly);
        if (m == 0) ambient0(j) = am;
        rhs(idx(j, m)) = tcoef(m) * am;
      }
    }
    Eigen::VectorXcd amps = lu.solve(rhs);
    Eigen::VectorXcd inc = incident0(ambient0, amps);
    for (int p = 0; p < n; ++p) {
      cd f = iso.force_per_mode * inc(p);
      if (p == q)
        f += cd(0.0, iso.omega * iso.added_mass) - iso.radiation_damping;
      out.impedance_force(p, q) = f;
    }
  }
  return out;
}

}  // namespace

BackendVariant backend_from_string(const std::string& name) {
  if (name == "isolated") return BackendVariant::kIsolated;
  if (name == "pa") return BackendVariant::kPa;
  if (name == "ms") return BackendVariant::kMs;
  throw InvalidArgument("unknown hydro backend '" + name +
                        "' (expected isolated, pa or ms)");
}

std::string to_string(BackendVariant v) {
  switch (v) {
    case BackendVariant::kIsolated: return "isolated";
    case BackendVariant::kPa: return "pa";
    default: return "ms";
  }
}

void HydroBackend::validate() const {
  if (n_terms < 4) throw InvalidArgument("HydroBackend: n_terms must be >= 4");
  if (max_order < 0) throw InvalidArgument("HydroBackend: max_order must be >= 0");
}

IsolatedModal cached_isolated_modal(const CylinderGeometry& geom, double omega,
                                    const HydroBackend& backend,
                                    HydroCache* cache) {
  if (cache != nullptr) {
    const std::string key = cache_key(geom, omega, backend, geom.depth);
    if (auto hit = cache->get(key)) return *hit;
    IsolatedModal sol = solve_isolated_modal(
        geom, omega, backend.n_terms,
        backend.variant == BackendVariant::kMs ? backend.max_order : 0);
    cache->put(key, sol);
    return sol;
  }
  return solve_isolated_modal(
      geom, omega, backend.n_terms,
      backend.variant == BackendVariant::kMs ? backend.max_order : 0);
}

HydroSet array_hydro(const std::vector<Vec2>& layout, const CylinderGeometry& geom,
                     double omega, const HydroBackend& backend, double heading,
                     HydroCache* cache) {
  geom.validate();
  backend.validate();
  check_layout(layout, geom.radius);

  const int n = static_cast<int>(layout.size());
  const IsolatedModal iso = cached_isolated_modal(geom, omega, backend, cache);
  const double k = iso.wavenumber;

  HydroSet set;
  set.omega = omega;
  set.added_mass = Eigen::MatrixXd::Zero(n, n);
  set.damping = Eigen::MatrixXd::Zero(n, n);
  set.excitation.resize(n);

  const double cb = std::cos(heading), sb = std::sin(heading);
  for (int p = 0; p < n; ++p) {
    set.added_mass(p, p) = iso.added_mass;
    set.damping(p, p) = iso.radiation_damping;
    // exp(+i w t) convention: wave toward +x carries phase exp(-i k x).
    set.excitation(p) =
        std::conj(iso.excitation) *
        std::exp(cd(0.0, -k * (layout[p].x * cb + layout[p].y * sb)));
  }

  // A single body has no interaction partners under any backend.
  if (backend.variant == BackendVariant::kIsolated || n == 1) return set;

  if (backend.variant == BackendVariant::kPa) {
    // Far-field Hankel cross-coupling on pairwise distances.
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q) {
        if (p == q) continue;
        const double d = std::hypot(layout[p].x - layout[q].x,
                                    layout[p].y - layout[q].y);
        set.damping(p, q) = iso.radiation_damping * std::cyl_bessel_j(0.0, k * d);
        set.added_mass(p, q) =
            -iso.radiation_damping * std::cyl_neumann(0.0, k * d) / omega;
      }
    return set;
  }

  // ms backend
  const MsResult ms = solve_ms(layout, iso, heading, backend.max_order);
  for (int p = 0; p < n; ++p) {
    set.excitation(p) = std::conj(ms.excitation(p));
    for (int q = 0; q < n; ++q) {
      set.added_mass(p, q) = ms.impedance_force(p, q).imag() / omega;
      set.damping(p, q) = -ms.impedance_force(p, q).real();
    }
  }
  // Reciprocity: enforce the symmetry the truncated expansion only
  // approximates.
  set.added_mass = ((set.added_mass + set.added_mass.transpose()) / 2.0).eval();
  set.damping = ((set.damping + set.damping.transpose()) / 2.0).eval();

  if (backend.max_order >= 1) {
    const MsResult lower = solve_ms(layout, iso, heading, backend.max_order - 1);
    double worst = 0.0;
    const double scale = set.damping.norm();
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q) {
        const double b_lo =
            -0.5 * (lower.impedance_force(p, q).real() +
                    lower.impedance_force(q, p).real());
        worst = std::max(worst, std::abs(set.damping(p, q) - b_lo) / scale);
      }
    set.convergence_warning = worst > 0.05;
  }
  return set;
}

}  // namespace wecfarm
