#pragma once

// Polyhedral cones and C-pseudo-cones: Wulff-shape construction, truncation
// polytopes, support/radial evaluations, and origin distance.

#include <array>
#include <string>
#include <vector>

#include "pcone/errors.hpp"
#include "pcone/vec.hpp"

namespace pcone {

// incidence / feasibility tolerance; inputs are expected at O(1) scale
inline constexpr double kGeomTol = 1e-9;

struct ConeSpec {
  int n = 0;
  std::vector<Vec> extreme_rays;   // unit generators of C
  std::vector<Vec> facet_normals;  // unit outward: C = {x : <x,w> <= 0}
  std::vector<Vec> dual_rays;      // unit extreme rays of C° (= facet_normals)
  Vec axis;                        // unit v with v in int C, -v in int C°

  bool contains(const Vec& x, double tol = kGeomTol) const;
  // v in Omega_C, i.e. v/|v| strictly inside C
  bool direction_in_omega(const Vec& v, double tol = kGeomTol) const;
  // u in Omega_{C°}, i.e. strictly negative on every extreme ray
  bool normal_in_dual_omega(const Vec& u, double tol = kGeomTol) const;

  // geodesic distance from unit u in Omega_{C°} to the boundary of Omega_{C°}
  double angular_distance_to_dual_boundary(const Vec& u) const;
};

// Builds the cone from generators. Normalizes rays, enumerates facets,
// derives dual rays, and picks axis = normalized ray sum unless given.
ConeSpec build_cone(const std::vector<Vec>& rays);
ConeSpec build_cone(const std::vector<Vec>& rays, const Vec& axis);

enum class FacetKind { Cone, Support, Cap };

struct TruncationFacet {
  Vec normal;    // outward unit normal of the halfspace <x,normal> <= offset
  double offset;
  FacetKind kind;
  int support_index;             // constraint index for Support facets, else -1
  std::vector<int> vertex_ids;   // indices into TruncationPolytope::vertices
};

struct TruncationPolytope {
  double height = 0.0;
  std::vector<Vec> vertices;
  std::vector<TruncationFacet> facets;

  const TruncationFacet* support_facet(int i) const;
  std::vector<Vec> facet_points(const TruncationFacet& f) const;
};

// C^-(t) = C ∩ {<x,axis> <= t}: apex plus one vertex per extreme ray.
TruncationPolytope truncate_cone(const ConeSpec& cone, double t);

class PseudoCone {
 public:
  // Wulff shape [f] = C ∩ ⋂_i {<y,u_i> <= -f_i}; normals must lie strictly
  // in Omega_{C°} and f must be positive.
  PseudoCone(ConeSpec cone, std::vector<Vec> normals, Vec f);

  const ConeSpec& cone() const { return cone_; }
  int dim() const { return cone_.n; }
  int num_constraints() const { return static_cast<int>(normals_.size()); }
  const std::vector<Vec>& normals() const { return normals_; }
  const Vec& input_magnitudes() const { return input_f_; }

  // effective support magnitudes h̄_K(u_i) = -h_K(u_i); >= input f
  const Vec& support_magnitudes() const { return hbar_; }
  bool constraint_active(int i) const { return active_[i]; }

  // cached truncation at the default height 1.1 * b(K) / sin Δ(ϖ)
  const TruncationPolytope& truncation() const { return trunc_; }

  double origin_distance() const { return b_; }   // b(K) = dist(o, K)
  double min_height() const { return s_; }        // s(K) = min <x,axis>
  double domain_distance() const { return delta_; }  // Δ(ϖ)

  // vertex list of the facet K ∩ H(u_i, -h̄_i); throws InactiveConstraint
  std::vector<Vec> facet_vertices(int i) const;

  // h̄_K(u) for unit u in Omega_{C°}
  double support_value(const Vec& u) const;

  // first-hitting scale along v in Omega_C and the binding facet
  struct RadialHit {
    double rho;
    int facet;  // index into normals()
  };
  RadialHit radial_hit(const Vec& v) const;
  double radial_function(const Vec& v) const { return radial_hit(v).rho; }
  Vec radial_gauss(const Vec& v) const { return normals_[radial_hit(v).facet]; }

  // membership test (recession-cone and feasibility checks in tests)
  bool contains(const Vec& x, double tol = kGeomTol) const;

  PseudoCone dilated(double lambda) const;

 private:
  ConeSpec cone_;
  std::vector<Vec> normals_;
  Vec input_f_;
  Vec hbar_;
  std::vector<bool> active_;
  TruncationPolytope trunc_;
  double b_ = 0.0;
  double s_ = 0.0;
  double delta_ = 0.0;
};

inline PseudoCone wulff_shape(const ConeSpec& cone, std::vector<Vec> normals,
                              Vec f) {
  return PseudoCone(std::move(cone), std::move(normals), std::move(f));
}

// K ∩ C^-(t) for an explicit height t > s(K).
TruncationPolytope truncate(const PseudoCone& K, double t);

// Angular ordering of the vertices of a planar convex polygon embedded in
// R^3 (used for triangulation and mesh export).
std::vector<int> order_polygon_vertices(const std::vector<Vec>& pts);

// Fan decomposition of a bounded convex facet given by its vertices:
// a single segment for dim 1, centroid fan for dim 2. Supports n <= 3.
std::vector<std::vector<Vec>> triangulate_facet(const std::vector<Vec>& pts);

}  // namespace pcone
