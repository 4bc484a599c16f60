#pragma once

// Necessary-condition machinery: spherical boundary distance, the
// confinement height of hyperplane slices, the cone-volume growth bound
// with explicit constants, and the containment radius for facet regions.

#include <vector>

#include "pcone/geometry.hpp"

namespace pcone {

// Δ(ω): geodesic distance of ω from the boundary of Omega_{C°}.
// Throws DirectionOnBoundary if some direction is not strictly interior.
double boundary_distance(const ConeSpec& cone, const std::vector<Vec>& omega);

struct ConfinementResult {
  double t_omega;        // exact slice-confinement height
  double certified;      // c1 * s / Δ(ω), always >= t_omega
  double c1;             // 2 c2 / π + π/2
  double c2;             // diameter of C ∩ H(axis, 1)
  double delta;          // Δ(ω)
};

// Every hyperplane H(u,τ), u in ω, that meets C^-(s) satisfies
// H(u,τ) ∩ C ⊂ C^-(t_omega). Computed in closed form over extreme rays.
ConfinementResult confinement_height(const ConeSpec& cone, double s,
                                     const std::vector<Vec>& omega);

struct BoundAudit {
  double delta;       // Δ(ω)
  double s;           // minimal axis height of K
  double t_omega;
  double c1, c2, c3, c4, c5, c6;
  double bound;       // c6 * t_omega^{n-1}
  double measured;    // V_K(ω) = Σ_{i in ω} V_i (unweighted)
  bool pass;
};

// Audits V_K(ω) <= c6 t_ω^{n-1} with the explicit constant recipe.
// ω is a set of constraint indices of K; throws EmptyOmega when empty.
BoundAudit thm11_audit(const PseudoCone& K, const std::vector<int>& omega);

struct ContainmentResult {
  double radius;           // b(K) / sin Δ(ω)
  double max_vertex_norm;  // over the facets indexed by ω
  bool pass;
};

// Checks that every vertex of every facet F_i, i in ω, lies in the ball of
// radius b(K)/sin Δ(ω) (tolerance 1e-9).
ContainmentResult containment_radius(const PseudoCone& K,
                                     const std::vector<int>& omega);

// H^{n-1}(C ∩ H(axis,1)) and the diameter of that cap section; shared by
// the audit constants.
double cone_cap_area(const ConeSpec& cone);
double cone_cap_diameter(const ConeSpec& cone);

}  // namespace pcone
