#include "wecfarm/single_body.hpp"

#include <cmath>
#include <complex>

#include <Eigen/Dense>

#include "wecfarm/constants.hpp"
#include "wecfarm/dispersion.hpp"
#include "wecfarm/errors.hpp"

namespace wecfarm {

namespace {

using cd = std::complex<double>;

double sinc(double x) {
  if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

// integral_0^e cos(k z) cos(l z) dz
double cos_cos_int(double k, double l, double e) {
  return 0.5 * e * (sinc((k - l) * e) + sinc((k + l) * e));
}

// integral_0^e cosh(k z) cos(l z) dz
double cosh_cos_int(double k, double l, double e) {
  return (k * std::sinh(k * e) * std::cos(l * e) +
          l * std::cosh(k * e) * std::sin(l * e)) /
         (k * k + l * l);
}

double bessel_j(int m, double x) { return std::cyl_bessel_j(double(m), x); }
double bessel_y(int m, double x) { return std::cyl_neumann(double(m), x); }
double bessel_i(int m, double x) { return std::cyl_bessel_i(double(m), x); }
double bessel_k(int m, double x) { return std::cyl_bessel_k(double(m), x); }

cd hankel1(int m, double x) { return {bessel_j(m, x), bessel_y(m, x)}; }

// C'_m(x) = C_{m-1}(x) - (m/x) C_m(x) for J, Y, H1.
cd hankel1_deriv(int m, double x) {
  if (m == 0) return -hankel1(1, x);
  return hankel1(m - 1, x) - double(m) / x * hankel1(m, x);
}

double bessel_j_deriv(int m, double x) {
  if (m == 0) return -bessel_j(1, x);
  return bessel_j(m - 1, x) - double(m) / x * bessel_j(m, x);
}

// log-derivative ratios; asymptotic branches avoid over/underflow at large x.
double k_ratio(int m, double x) {  // K_m'(x)/K_m(x)
  if (x > 300.0) return -1.0 - (4.0 * m * m + 1.0) / (8.0 * x);
  // K_{-1} = K_1, so m = 0 reduces to -K1/K0.
  return -(bessel_k(m == 0 ? 1 : m - 1, x) + bessel_k(m + 1, x)) /
         (2.0 * bessel_k(m, x));
}

double i_ratio(int m, double x) {  // I_m'(x)/I_m(x)
  if (x > 300.0) return 1.0 - (4.0 * m * m - 1.0) / (8.0 * x);
  if (m == 0) return bessel_i(1, x) / bessel_i(0, x);
  return (bessel_i(m - 1, x) + bessel_i(m + 1, x)) / (2.0 * bessel_i(m, x));
}

double i1_over_i0(double x) {
  if (x > 300.0) return 1.0 - 1.0 / (2.0 * x);
  return bessel_i(1, x) / bessel_i(0, x);
}

struct DepthBasis {
  double k0;                     // propagating wavenumber
  std::vector<double> kq;        // evanescent wavenumbers, q = 1..Q
  double n0;                     // normalization of the propagating mode
  std::vector<double> nq;        // normalizations of the evanescent modes
};

DepthBasis make_depth_basis(double omega, double h, int n_terms) {
  DepthBasis d;
  d.k0 = wavenumber(omega, h);
  d.kq = evanescent_wavenumbers(omega, h, n_terms);
  const double kh = d.k0 * h;
  d.n0 = 0.5 * (1.0 + (kh < 350.0 ? std::sinh(2.0 * kh) / (2.0 * kh) : 0.0));
  // For large kh sinh overflows; fall back handled above (never hit at h=50).
  d.nq.resize(n_terms);
  for (int q = 0; q < n_terms; ++q) {
    const double kqh = d.kq[q] * h;
    d.nq[q] = 0.5 * (1.0 + std::sin(2.0 * kqh) / (2.0 * kqh));
  }
  return d;
}

}  // namespace

IsolatedModal solve_isolated_modal(const CylinderGeometry& geom, double omega,
                                   int n_terms, int max_order) {
  geom.validate();
  if (!(omega > 0.0)) throw InvalidArgument("solve_isolated_modal: omega must be > 0");
  if (n_terms < 4) throw InvalidArgument("solve_isolated_modal: n_terms must be >= 4");
  if (max_order < 0) throw InvalidArgument("solve_isolated_modal: max_order must be >= 0");

  const double a = geom.radius;
  const double h = geom.depth;
  const double d = geom.draft();
  const double e = h - d;  // gap under the body
  const int Q = n_terms;   // evanescent exterior modes; interior modes 0..Q

  const DepthBasis basis = make_depth_basis(omega, h, Q);
  const double k0 = basis.k0;

  // Interior axial wavenumbers and coupling integrals
  //   C[q][n] = integral_0^e Z_q(z) cos(n pi z / e) dz.
  std::vector<double> lam(Q + 1);
  for (int n = 0; n <= Q; ++n) lam[n] = n * kPi / e;

  Eigen::MatrixXd C(Q + 1, Q + 1);
  const double s0 = 1.0 / std::sqrt(basis.n0);
  for (int n = 0; n <= Q; ++n) C(0, n) = s0 * cosh_cos_int(k0, lam[n], e);
  for (int q = 1; q <= Q; ++q) {
    const double sq = 1.0 / std::sqrt(basis.nq[q - 1]);
    for (int n = 0; n <= Q; ++n)
      C(q, n) = sq * cos_cos_int(basis.kq[q - 1], lam[n], e);
  }

  IsolatedModal out;
  out.omega = omega;
  out.wavenumber = k0;
  out.transfer.resize(max_order + 1);

  // Bottom-pressure weights: integral_0^a R^i_n(r) r dr (per 2*pi).
  std::vector<double> W(Q + 1);
  W[0] = 0.5 * a * a;
  for (int n = 1; n <= Q; ++n)
    W[n] = a * i1_over_i0(lam[n] * a) / lam[n];

  const int N = 2 * (Q + 1);  // unknowns: alpha_0..alpha_Q, beta_0..beta_Q

  for (int m = 0; m <= max_order; ++m) {
    // Exterior radial log-derivatives D_q and interior G_n for this order.
    Eigen::VectorXcd D(Q + 1);
    D(0) = k0 * hankel1_deriv(m, k0 * a) / hankel1(m, k0 * a);
    for (int q = 1; q <= Q; ++q)
      D(q) = basis.kq[q - 1] * k_ratio(m, basis.kq[q - 1] * a);

    Eigen::VectorXd G(Q + 1);
    G(0) = (m == 0) ? 0.0 : double(m) / a;
    for (int n = 1; n <= Q; ++n) G(n) = lam[n] * i_ratio(m, lam[n] * a);

    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(N, N);
    // Rows 0..Q: potential continuity projected on interior modes.
    for (int n = 0; n <= Q; ++n) {
      for (int q = 0; q <= Q; ++q) M(n, q) = C(q, n);
      M(n, Q + 1 + n) = -(n == 0 ? e : 0.5 * e);
    }
    // Rows Q+1..2Q+1: radial velocity projected on exterior modes.
    for (int q = 0; q <= Q; ++q) {
      M(Q + 1 + q, q) = D(q) * h;
      for (int n = 0; n <= Q; ++n) M(Q + 1 + q, Q + 1 + n) = -G(n) * C(q, n);
    }

    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(M);

    if (m == 0) {
      // Radiation problem: unit heave velocity, particular solution
      // phi_p = (z^2 - r^2/2) / (2 e).
      Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(N);
      rhs(0) = (1.0 / (2.0 * e)) * (e * e * e / 3.0 - a * a * e / 2.0);
      for (int n = 1; n <= Q; ++n)
        rhs(n) = ((n % 2 == 0) ? 1.0 : -1.0) / (lam[n] * lam[n]);
      for (int q = 0; q <= Q; ++q)
        rhs(Q + 1 + q) = -(a / (2.0 * e)) * C(q, 0);

      Eigen::VectorXcd sol = lu.solve(rhs);
      if (!sol.allFinite())
        throw SolverError("solve_isolated_modal: radiation solve failed (R=" +
                          std::to_string(geom.radius) +
                          ", omega=" + std::to_string(omega) + ")");

      // Vertical force on the bottom per unit velocity: F = i w rho 2 pi *
      // [ int phi_p r dr + sum beta_n (-1)^n W_n ].
      const double ip = (1.0 / (2.0 * e)) * (e * e * a * a / 2.0 - a * a * a * a / 8.0);
      cd acc = ip;
      for (int n = 0; n <= Q; ++n)
        acc += sol(Q + 1 + n) * ((n % 2 == 0) ? 1.0 : -1.0) * W[n];
      const cd f_rad = cd(0.0, 1.0) * omega * kRhoWater * 2.0 * kPi * acc;
      out.added_mass = f_rad.imag() / omega;
      out.radiation_damping = -f_rad.real();
      out.radiated_amplitude = sol(0) / hankel1(0, k0 * a);
    }

    // Scattering problem for azimuthal order m: incident J_m(k0 r) Z0(z).
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(N);
    const double jm = bessel_j(m, k0 * a);
    const double jmp = bessel_j_deriv(m, k0 * a);
    for (int n = 0; n <= Q; ++n) rhs(n) = -jm * C(0, n);
    rhs(Q + 1 + 0) = -k0 * jmp * h;

    Eigen::VectorXcd sol = lu.solve(rhs);
    if (!sol.allFinite())
      throw SolverError("solve_isolated_modal: scattering solve failed (m=" +
                        std::to_string(m) + ", omega=" + std::to_string(omega) + ")");

    out.transfer[m] = sol(0) / hankel1(m, k0 * a);

    if (m == 0) {
      cd acc = 0.0;
      for (int n = 0; n <= Q; ++n)
        acc += sol(Q + 1 + n) * ((n % 2 == 0) ? 1.0 : -1.0) * W[n];
      out.force_per_mode = cd(0.0, 1.0) * omega * kRhoWater * 2.0 * kPi * acc;
      // Plane wave of unit amplitude carries J_0 Z_0 with this coefficient.
      const double kh = k0 * h;
      const double cosh_kh = std::cosh(kh);
      out.plane_wave_factor =
          cd(0.0, -1.0) * kGravity / omega * std::sqrt(basis.n0) / cosh_kh;
      out.excitation = out.force_per_mode * out.plane_wave_factor;
    }
  }

  return out;
}

SingleBodyCoeffs isolated_heave_coefficients(const CylinderGeometry& geom,
                                             double omega, int n_terms) {
  const IsolatedModal sol = solve_isolated_modal(geom, omega, n_terms, 0);
  return {omega, sol.added_mass, sol.radiation_damping, std::conj(sol.excitation)};
}

}  // namespace wecfarm
