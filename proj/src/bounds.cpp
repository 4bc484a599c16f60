#include "pcone/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pcone/measures.hpp"

namespace pcone {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::vector<Vec> cap_section_vertices(const ConeSpec& cone) {
  std::vector<Vec> pts;
  for (const auto& r : cone.extreme_rays)
    pts.push_back(scale(r, 1.0 / dot(r, cone.axis)));
  return pts;
}

}  // namespace

double boundary_distance(const ConeSpec& cone, const std::vector<Vec>& omega) {
  if (omega.empty()) fail(Errc::EmptyOmega, "omega must be nonempty");
  double best = kPi;
  for (const auto& u : omega) {
    const Vec uu = normalized(u);
    if (!cone.normal_in_dual_omega(uu))
      fail(Errc::DirectionOnBoundary,
           "direction is not strictly inside Omega_{C°}");
    best = std::min(best, cone.angular_distance_to_dual_boundary(uu));
  }
  if (best <= 0.0)
    fail(Errc::DirectionOnBoundary, "direction on the boundary of Omega_{C°}");
  return best;
}

double cone_cap_area(const ConeSpec& cone) {
  double area = 0.0;
  for (const auto& s : triangulate_facet(cap_section_vertices(cone)))
    area += simplex_volume(s);
  return area;
}

double cone_cap_diameter(const ConeSpec& cone) {
  const std::vector<Vec> pts = cap_section_vertices(cone);
  double d = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      d = std::max(d, distance(pts[i], pts[j]));
  return d;
}

ConfinementResult confinement_height(const ConeSpec& cone, double s,
                                     const std::vector<Vec>& omega) {
  if (!(s > 0.0)) fail(Errc::InvalidArgument, "s must be positive");
  const double delta = boundary_distance(cone, omega);

  // vertices of C^-(s): apex and the ray points at height s
  std::vector<Vec> cs{Vec(cone.n, 0.0)};
  for (const auto& r : cone.extreme_rays)
    cs.push_back(scale(r, s / dot(r, cone.axis)));

  double t_omega = 0.0;
  for (const auto& u : omega) {
    const Vec uu = normalized(u);
    double tau_min = std::numeric_limits<double>::infinity();
    for (const auto& x : cs) tau_min = std::min(tau_min, dot(x, uu));
    // slice C ∩ H(u, tau_min) has its vertices on the extreme rays
    for (const auto& r : cone.extreme_rays) {
      const double lam = tau_min / dot(r, uu);  // <r,u> < 0, tau_min < 0
      t_omega = std::max(t_omega, lam * dot(r, cone.axis));
    }
  }

  const double c2 = cone_cap_diameter(cone);
  const double c1 = 2.0 * c2 / kPi + kPi / 2.0;
  return {t_omega, c1 * s / delta, c1, c2, delta};
}

BoundAudit thm11_audit(const PseudoCone& K, const std::vector<int>& omega) {
  if (omega.empty()) fail(Errc::EmptyOmega, "omega must be nonempty");
  std::vector<Vec> dirs;
  for (int i : omega) {
    if (i < 0 || i >= K.num_constraints())
      fail(Errc::InvalidArgument, "facet index out of range");
    dirs.push_back(K.normals()[i]);
  }

  const ConeSpec& cone = K.cone();
  const int n = cone.n;
  const double s = K.min_height();
  const ConfinementResult conf = confinement_height(cone, s, dirs);

  const double c4 = cone_cap_area(cone);
  const double c3 = c4 * s / n;  // H^n(C^-(1)) * s, via H^n(C^-(1)) = c4/n

  // c5 = max over τ in [s, t_ω] of [τ^{n-1} - (τ-s)^{n-1}] / τ^{n-2}
  double c5 = 0.0;
  const double hi = std::max(conf.t_omega, s);
  const int grid = 4096;
  for (int k = 0; k <= grid; ++k) {
    const double tau = s + (hi - s) * k / grid;
    const double val = (std::pow(tau, n - 1) - std::pow(tau - s, n - 1)) /
                       std::pow(tau, n - 2);
    c5 = std::max(c5, val);
  }

  const double c6 = c3 + c4 * c5 / (n - 1);
  const double bound = c6 * std::pow(conf.t_omega, n - 1);

  double measured = 0.0;
  for (int i : omega)
    if (K.constraint_active(i)) measured += unweighted_measures(K, i).cone_volume;

  BoundAudit audit;
  audit.delta = conf.delta;
  audit.s = s;
  audit.t_omega = conf.t_omega;
  audit.c1 = conf.c1;
  audit.c2 = conf.c2;
  audit.c3 = c3;
  audit.c4 = c4;
  audit.c5 = c5;
  audit.c6 = c6;
  audit.bound = bound;
  audit.measured = measured;
  audit.pass = measured <= bound * (1.0 + 1e-9) + 1e-12;
  return audit;
}

ContainmentResult containment_radius(const PseudoCone& K,
                                     const std::vector<int>& omega) {
  std::vector<Vec> dirs;
  for (int i : omega) {
    if (i < 0 || i >= K.num_constraints())
      fail(Errc::InvalidArgument, "facet index out of range");
    dirs.push_back(K.normals()[i]);
  }
  const double delta = boundary_distance(K.cone(), dirs);
  const double radius = K.origin_distance() / std::sin(delta);

  double maxnorm = 0.0;
  for (int i : omega) {
    if (!K.constraint_active(i)) continue;
    for (const auto& v : K.facet_vertices(i)) maxnorm = std::max(maxnorm, norm(v));
  }
  return {radius, maxnorm, maxnorm <= radius + 1e-9};
}

}  // namespace pcone
