#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "wecfarm/geometry.hpp"
#include "wecfarm/single_body.hpp"

namespace wecfarm {

class HydroCache;

enum class BackendVariant { kIsolated, kPa, kMs };

BackendVariant backend_from_string(const std::string& name);
std::string to_string(BackendVariant v);

struct HydroBackend {
  BackendVariant variant = BackendVariant::kPa;
  int n_terms = 40;   // evanescent depth modes in the isolated solve
  int max_order = 3;  // partial-wave order for the ms interaction solve

  void validate() const;
};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

// Farm hydrodynamic coefficients at one frequency.
struct HydroSet {
  double omega = 0.0;
  Eigen::MatrixXd added_mass;       // A, n x n [kg]
  Eigen::MatrixXd damping;          // B, n x n [N s/m]
  Eigen::VectorXcd excitation;      // X per unit amplitude, exp(+i w t) phases
  bool convergence_warning = false; // ms truncation did not settle at max_order

  int size() const { return static_cast<int>(excitation.size()); }
};

// Assembles A(w), B(w), X(w) for a layout of identical cylinders.
// heading is the wave propagation direction [rad], 0 = +x.
HydroSet array_hydro(const std::vector<Vec2>& layout, const CylinderGeometry& geom,
                     double omega, const HydroBackend& backend,
                     double heading = 0.0, HydroCache* cache = nullptr);

// Isolated-body modal solution, via the cache when one is supplied.
IsolatedModal cached_isolated_modal(const CylinderGeometry& geom, double omega,
                                    const HydroBackend& backend,
                                    HydroCache* cache);

}  // namespace wecfarm
