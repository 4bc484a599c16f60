#pragma once

// Weighted and unweighted surface-area and cone-volume measures of
// polyhedral C-pseudo-cones, by three independent routes: facet quadrature,
// the radial (spherical) transform, and Monte-Carlo over the cone region.

#include <cstdint>
#include <vector>

#include "pcone/geometry.hpp"
#include "pcone/quadrature.hpp"

namespace pcone {

// S^Θ_{n-1}(K, {u_i}): facet-route quadrature; 0 for inactive constraints.
QuadratureResult weighted_surface_area(const PseudoCone& K,
                                       const WeightDensity& density, int i,
                                       double tol = kQuadTol);

// V^Θ_K({u_i}) = h̄_i S^Θ_i / (n-q); 0 for inactive constraints.
QuadratureResult weighted_cone_volume(const PseudoCone& K,
                                      const WeightDensity& density, int i,
                                      double tol = kQuadTol);

// Exact unweighted facet measure and cone volume: S_i = H^{n-1}(F_i),
// V_i = h̄_i S_i / n. Throws InactiveConstraint.
struct UnweightedMeasures {
  double surface;
  double cone_volume;
};
UnweightedMeasures unweighted_measures(const PseudoCone& K, int i);

// V_Θ(K) = Σ_i V^Θ_i over active facets.
QuadratureResult weighted_covolume(const PseudoCone& K,
                                   const WeightDensity& density,
                                   double tol = kQuadTol);

// Maximal arcs of Omega_C (n = 2) on which a single facet is radially
// binding. Angles are offsets into the angular parametrization of Omega_C.
struct RadialArc {
  double theta0;
  double theta1;
  int facet;
};
struct ArcDecomposition {
  double base_angle;   // atan2 of the first extreme ray
  double orientation;  // +1 or -1
  double span;
  std::vector<RadialArc> arcs;

  Vec direction(double theta) const {
    const double a = base_angle + orientation * theta;
    return {std::cos(a), std::sin(a)};
  }
};
ArcDecomposition radial_arcs(const PseudoCone& K);

// Radial route for V^Θ_K(ω), ω a set of constraint indices:
// (1/(n-q)) ∫_{α_K^{-1}(ω)} Θ(v) ϱ_K^{n-q}(v) dv.
// Deterministic for n = 2, Monte-Carlo for n = 3.
QuadratureResult weighted_cone_volume_radial(const PseudoCone& K,
                                             const WeightDensity& density,
                                             const std::vector<int>& omega,
                                             const SphericalOptions& opts = {});

// Radial route for S^Θ via the integral transform
// ∫ g(α_K) Θ(r_K) ϱ^{n-1} / |<v,α_K>| dv with g the indicator of ω.
QuadratureResult weighted_surface_area_radial(const PseudoCone& K,
                                              const WeightDensity& density,
                                              const std::vector<int>& omega,
                                              const SphericalOptions& opts = {});

struct DirectionMeasure {
  int index;
  Vec u;
  double hbar;
  bool active;
  double surface_theta;
  double surface_theta_err;
  double cone_volume_theta;
  double cone_volume_theta_err;
  double surface;      // unweighted H^{n-1}(F_i)
  double cone_volume;  // unweighted h̄ S / n
};

struct RouteValue {
  bool computed = false;
  double value = 0.0;
  double error = 0.0;
};

struct MeasureReport {
  std::vector<DirectionMeasure> atoms;
  double covolume_theta = 0.0;
  double covolume_theta_err = 0.0;
  double covolume_unweighted = 0.0;
  double surface_theta_total = 0.0;
  RouteValue radial_route;  // V_Θ by the radial route
  RouteValue mc_route;      // V_Θ by the Monte-Carlo cone oracle
};

struct MeasureOptions {
  double tol = kQuadTol;
  long mc_samples = 1'000'000;
  std::uint64_t seed = 1;
  bool with_radial = false;
  bool with_mc = false;
  int threads = 1;
};

MeasureReport measure_report(const PseudoCone& K, const WeightDensity& density,
                             const MeasureOptions& opts = {});

}  // namespace pcone
