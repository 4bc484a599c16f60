#pragma once

// Error-controlled integration of the homogeneous weight density over
// segments, triangles, spherical regions, and cone regions, plus seeded
// Monte-Carlo estimators used as independent verification routes.

#include <cstdint>
#include <functional>
#include <vector>

#include "pcone/errors.hpp"
#include "pcone/geometry.hpp"
#include "pcone/vec.hpp"

namespace pcone {

// Θ(y) = |y|^{-q} ψ(y/|y|) with n-1 < q < n (strict).
class WeightDensity {
 public:
  enum class Psi { Constant, AxisPower };

  WeightDensity(int n, double q);                          // ψ ≡ 1
  WeightDensity(int n, double q, double power, Vec axis);  // ψ(v) = <v,axis>^p

  int dim() const { return n_; }
  double exponent() const { return q_; }
  Psi psi() const { return psi_; }
  double power() const { return power_; }
  const Vec& axis() const { return axis_; }

  double operator()(const Vec& y) const;
  // ψ(v) for unit v
  double spherical_factor(const Vec& v) const;

 private:
  int n_;
  double q_;
  Psi psi_;
  double power_ = 0.0;
  Vec axis_;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  long evaluations = 0;
};

inline constexpr double kQuadTol = 1e-8;
inline constexpr long kQuadBudget = 40'000'000;

// ∫_S Θ dH^d over a d-simplex (d = 1 or 2) embedded in R^n, adaptive
// longest-edge bisection with a two-level error estimate.
QuadratureResult integrate_simplex(const WeightDensity& density,
                                   const std::vector<Vec>& simplex,
                                   double tol = kQuadTol,
                                   long budget = kQuadBudget);

// ∫_F Θ dH^{n-1} over a bounded convex facet given by its vertices;
// triangulated from its centroid.
QuadratureResult integrate_facet(const WeightDensity& density,
                                 const std::vector<Vec>& facet,
                                 double tol = kQuadTol,
                                 long budget = kQuadBudget);

// Generic adaptive quadrature of a continuous function over a segment or
// triangle (same scheme as integrate_simplex, arbitrary integrand).
QuadratureResult integrate_function(const std::function<double(const Vec&)>& f,
                                    const std::vector<Vec>& simplex,
                                    double tol = kQuadTol,
                                    long budget = kQuadBudget);
QuadratureResult integrate_function_1d(const std::function<double(double)>& f,
                                       double a, double b,
                                       double tol = kQuadTol,
                                       long budget = kQuadBudget);

struct SphericalOptions {
  double tol = kQuadTol;         // deterministic route (n = 2)
  long mc_samples = 1'000'000;   // Monte-Carlo route (n = 3)
  std::uint64_t seed = 1;
  int strata = 64;
};

// ∫_{Omega_C} g(v) dv. Deterministic adaptive quadrature over the angular
// interval for n = 2; stratified Monte-Carlo over the bounding spherical cap
// with rejection for n = 3 (error field is the standard error there).
QuadratureResult spherical_region_integral(
    const ConeSpec& cone, const std::function<double(const Vec&)>& g,
    const SphericalOptions& opts = {});

struct ConeRegionFacet {
  std::vector<Vec> vertices;
  double offset;  // h̄ of the supporting hyperplane (distance from o)
};

// Unbiased Monte-Carlo estimate of ∫ Θ dH^n over the union of cones
// [o,x], x in the given facets. Radial coordinate importance-sampled with
// density ∝ t^{1.5(n-q)-1} so the estimator has finite variance for every
// admissible q. Deterministic for a fixed seed.
QuadratureResult mc_cone_region(const WeightDensity& density,
                                const std::vector<ConeRegionFacet>& region,
                                long samples, std::uint64_t seed);

// H^n_Θ(C ∩ rB^n) = r^{n-q}/(n-q) · ∫_{Omega_C} ψ dv.
QuadratureResult weighted_ball_measure(const ConeSpec& cone,
                                       const WeightDensity& density, double r,
                                       const SphericalOptions& opts = {});

}  // namespace pcone
