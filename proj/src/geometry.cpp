#include "pcone/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace pcone {

namespace {

constexpr double kPi = 3.14159265358979323846;

double eval_tol(double offset) { return kGeomTol * (1.0 + std::abs(offset)); }

struct HalfSpace {
  Vec a;
  double b;
  FacetKind kind;
  int support_index;
};

// indices of constraints (among hs[0..count)) tight at x
std::vector<int> tight_set(const Vec& x, const std::vector<HalfSpace>& hs,
                           int count) {
  std::vector<int> t;
  for (int i = 0; i < count; ++i)
    if (std::abs(dot(x, hs[i].a) - hs[i].b) <= eval_tol(hs[i].b)) t.push_back(i);
  return t;
}

void push_unique(std::vector<Vec>& pts, const Vec& x) {
  for (const auto& p : pts)
    if (distance(p, x) <= kGeomTol * (1.0 + norm(x))) return;
  pts.push_back(x);
}

// Clips conv(pts) by hs[next]; pts are the vertices of the intersection of
// hs[0..next). A pair of vertices is an edge iff their common tight normals
// have rank n-1 (exact for bounded polytopes, tolerant of degenerate merges).
std::vector<Vec> clip_step(const std::vector<Vec>& pts,
                           const std::vector<HalfSpace>& hs, int next) {
  const HalfSpace& cut = hs[next];
  const int nv = static_cast<int>(pts.size());
  if (nv == 0) return {};
  const int n = static_cast<int>(pts[0].size());

  std::vector<double> e(nv);
  std::vector<int> cls(nv);  // -1 in, 0 on, +1 out
  bool any_out = false;
  for (int i = 0; i < nv; ++i) {
    e[i] = dot(pts[i], cut.a) - cut.b;
    cls[i] = std::abs(e[i]) <= eval_tol(cut.b) ? 0 : (e[i] > 0.0 ? 1 : -1);
    any_out |= cls[i] > 0;
  }
  if (!any_out) return pts;

  std::vector<std::vector<int>> tights(nv);
  for (int i = 0; i < nv; ++i) tights[i] = tight_set(pts[i], hs, next);

  std::vector<Vec> out;
  for (int i = 0; i < nv; ++i)
    if (cls[i] <= 0) push_unique(out, pts[i]);

  for (int i = 0; i < nv; ++i) {
    if (cls[i] >= 0) continue;
    for (int j = 0; j < nv; ++j) {
      if (cls[j] <= 0) continue;
      Mat common;
      for (int c : tights[i])
        if (std::find(tights[j].begin(), tights[j].end(), c) != tights[j].end())
          common.push_back(hs[c].a);
      if (common.size() + 1 < static_cast<std::size_t>(n)) continue;
      if (matrix_rank(common) != n - 1) continue;
      const double t = -e[i] / (e[j] - e[i]);
      Vec x = pts[i];
      for (int c = 0; c < n; ++c) x[c] += t * (pts[j][c] - pts[i][c]);
      push_unique(out, x);
    }
  }
  return out;
}

TruncationPolytope assemble_polytope(const std::vector<Vec>& pts,
                                     const std::vector<HalfSpace>& hs,
                                     double height) {
  const int n = pts.empty() ? 0 : static_cast<int>(pts[0].size());
  TruncationPolytope poly;
  poly.height = height;

  // keep only genuine vertices: tight normals of full rank
  for (const auto& x : pts) {
    Mat tight_normals;
    for (const auto& h : hs)
      if (std::abs(dot(x, h.a) - h.b) <= eval_tol(h.b))
        tight_normals.push_back(h.a);
    if (matrix_rank(tight_normals) == n) poly.vertices.push_back(x);
  }

  for (const auto& h : hs) {
    TruncationFacet f;
    f.normal = h.a;
    f.offset = h.b;
    f.kind = h.kind;
    f.support_index = h.support_index;
    std::vector<Vec> incident;
    for (int vi = 0; vi < static_cast<int>(poly.vertices.size()); ++vi) {
      if (std::abs(dot(poly.vertices[vi], h.a) - h.b) <= eval_tol(h.b)) {
        f.vertex_ids.push_back(vi);
        incident.push_back(poly.vertices[vi]);
      }
    }
    if (affine_rank(incident) == n - 1) poly.facets.push_back(std::move(f));
  }
  return poly;
}

std::vector<HalfSpace> cone_halfspaces(const ConeSpec& cone, double t) {
  std::vector<HalfSpace> hs;
  for (const auto& w : cone.facet_normals)
    hs.push_back({w, 0.0, FacetKind::Cone, -1});
  hs.push_back({cone.axis, t, FacetKind::Cap, -1});
  return hs;
}

std::vector<Vec> cone_truncation_vertices(const ConeSpec& cone, double t) {
  std::vector<Vec> pts;
  pts.push_back(Vec(cone.n, 0.0));
  for (const auto& r : cone.extreme_rays)
    pts.push_back(scale(r, t / dot(r, cone.axis)));
  return pts;
}

TruncationPolytope build_truncation(const ConeSpec& cone,
                                    const std::vector<Vec>& normals,
                                    const Vec& f, double t) {
  std::vector<HalfSpace> hs = cone_halfspaces(cone, t);
  for (std::size_t i = 0; i < normals.size(); ++i)
    hs.push_back({normals[i], -f[i], FacetKind::Support, static_cast<int>(i)});

  const int base = static_cast<int>(cone.facet_normals.size()) + 1;
  std::vector<Vec> pts = cone_truncation_vertices(cone, t);
  for (std::size_t i = 0; i < normals.size(); ++i) {
    pts = clip_step(pts, hs, base + static_cast<int>(i));
    if (pts.empty()) return {};
  }
  return assemble_polytope(pts, hs, t);
}

}  // namespace

bool ConeSpec::contains(const Vec& x, double tol) const {
  for (const auto& w : facet_normals)
    if (dot(x, w) > tol * (1.0 + norm(x))) return false;
  return true;
}

bool ConeSpec::direction_in_omega(const Vec& v, double tol) const {
  for (const auto& w : facet_normals)
    if (dot(v, w) >= -tol) return false;
  return true;
}

bool ConeSpec::normal_in_dual_omega(const Vec& u, double tol) const {
  for (const auto& r : extreme_rays)
    if (dot(u, r) >= -tol) return false;
  return true;
}

double ConeSpec::angular_distance_to_dual_boundary(const Vec& u) const {
  if (!normal_in_dual_omega(u)) return 0.0;

  double best = kPi;
  // 1-dimensional faces of C° (its extreme rays)
  for (const auto& w : dual_rays) {
    const double c = std::clamp(dot(u, w), -1.0, 1.0);
    best = std::min(best, std::acos(c));
  }

  // higher faces of C°: tight sets of extreme rays of C (facet normals of
  // C°), subset sizes 1..n-2; the face's nearest point is the orthogonal
  // projection of u when that projection stays in C°
  const int nr = static_cast<int>(extreme_rays.size());
  const int max_size = n - 2;
  std::vector<int> subset;
  auto recurse = [&](auto&& self, int start) -> void {
    if (!subset.empty()) {
      // orthonormal basis of span{rays in subset}
      Mat basis;
      for (int idx : subset) {
        Vec q = extreme_rays[idx];
        for (const auto& e : basis) axpy(q, -dot(q, e), e);
        const double m = norm(q);
        if (m < 1e-12) return;  // dependent subset: covered by a smaller one
        basis.push_back(scale(q, 1.0 / m));
      }
      Vec p = u;
      for (const auto& e : basis) axpy(p, -dot(p, e), e);
      const double pm = norm(p);
      if (pm > kGeomTol) {
        bool feasible = true;
        for (const auto& r : extreme_rays)
          if (dot(p, r) > kGeomTol * pm) feasible = false;
        if (feasible)
          best = std::min(best, std::acos(std::clamp(pm, 0.0, 1.0)));
      }
    }
    if (static_cast<int>(subset.size()) == max_size) return;
    for (int i = start; i < nr; ++i) {
      subset.push_back(i);
      self(self, i + 1);
      subset.pop_back();
    }
  };
  if (max_size >= 1) recurse(recurse, 0);
  return best;
}

ConeSpec build_cone(const std::vector<Vec>& rays) {
  ConeSpec pre = build_cone(rays, Vec{});
  return pre;
}

ConeSpec build_cone(const std::vector<Vec>& rays, const Vec& axis) {
  if (rays.empty()) fail(Errc::InvalidArgument, "no rays given");
  const int n = static_cast<int>(rays[0].size());
  if (n < 2) fail(Errc::InvalidArgument, "dimension must be >= 2");

  std::vector<Vec> unit;
  for (const auto& r : rays) {
    if (static_cast<int>(r.size()) != n)
      fail(Errc::InvalidArgument, "inconsistent ray dimensions");
    const double m = norm(r);
    if (m < 1e-12) fail(Errc::InvalidArgument, "zero ray");
    push_unique(unit, scale(r, 1.0 / m));
  }

  if (matrix_rank(unit) < n)
    fail(Errc::NotFullDimensional, "rays do not span the space");
  if (norm(min_norm_point(unit)) <= kGeomTol)
    fail(Errc::NotPointed, "positive hull of the rays contains a line");

  // facet normals from (n-1)-subsets of rays spanning supporting hyperplanes
  std::vector<Vec> facets;
  const int nr = static_cast<int>(unit.size());
  std::vector<int> subset;
  auto enumerate = [&](auto&& self, int start) -> void {
    if (static_cast<int>(subset.size()) == n - 1) {
      Mat rows;
      for (int idx : subset) rows.push_back(unit[idx]);
      Vec w = orthogonal_complement_1d(rows);
      if (w.empty()) return;
      bool pos = false, neg = false;
      for (const auto& r : unit) {
        const double d = dot(r, w);
        if (d > kGeomTol) pos = true;
        if (d < -kGeomTol) neg = true;
      }
      if (pos && neg) return;
      if (pos) w = scale(w, -1.0);
      push_unique(facets, w);
      return;
    }
    for (int i = start; i < nr; ++i) {
      subset.push_back(i);
      self(self, i + 1);
      subset.pop_back();
    }
  };
  enumerate(enumerate, 0);
  if (static_cast<int>(facets.size()) < n)
    fail(Errc::NotFullDimensional, "facet enumeration found fewer than n facets");

  // keep only extreme rays: tight facet normals must span rank n-1
  std::vector<Vec> extreme;
  for (const auto& r : unit) {
    Mat tight;
    for (const auto& w : facets)
      if (std::abs(dot(r, w)) <= kGeomTol) tight.push_back(w);
    if (matrix_rank(tight) == n - 1) extreme.push_back(r);
  }
  if (extreme.empty()) fail(Errc::NotPointed, "no extreme rays identified");

  ConeSpec cone;
  cone.n = n;
  cone.extreme_rays = std::move(extreme);
  cone.facet_normals = facets;
  cone.dual_rays = facets;

  if (axis.empty()) {
    Vec s(n, 0.0);
    for (const auto& r : cone.extreme_rays) axpy(s, 1.0, r);
    cone.axis = normalized(s);
  } else {
    if (static_cast<int>(axis.size()) != n)
      fail(Errc::InvalidArgument, "axis dimension mismatch");
    cone.axis = normalized(axis);
  }

  for (const auto& w : cone.facet_normals)
    if (dot(cone.axis, w) >= -kGeomTol)
      fail(Errc::AxisInvalid, "axis is not interior to the cone");
  for (const auto& r : cone.extreme_rays)
    if (dot(cone.axis, r) <= kGeomTol)
      fail(Errc::AxisInvalid, "-axis is not interior to the dual cone");

  return cone;
}

const TruncationFacet* TruncationPolytope::support_facet(int i) const {
  for (const auto& f : facets)
    if (f.kind == FacetKind::Support && f.support_index == i) return &f;
  return nullptr;
}

std::vector<Vec> TruncationPolytope::facet_points(
    const TruncationFacet& f) const {
  std::vector<Vec> pts;
  pts.reserve(f.vertex_ids.size());
  for (int id : f.vertex_ids) pts.push_back(vertices[id]);
  return pts;
}

TruncationPolytope truncate_cone(const ConeSpec& cone, double t) {
  if (t <= 0.0) fail(Errc::HeightTooSmall, "truncation height must be positive");
  return assemble_polytope(cone_truncation_vertices(cone, t),
                           cone_halfspaces(cone, t), t);
}

PseudoCone::PseudoCone(ConeSpec cone, std::vector<Vec> normals, Vec f)
    : cone_(std::move(cone)), normals_(std::move(normals)), input_f_(std::move(f)) {
  const int n = cone_.n;
  const int m = static_cast<int>(normals_.size());
  if (m == 0) fail(Errc::InvalidArgument, "at least one facet normal required");
  if (static_cast<int>(input_f_.size()) != m)
    fail(Errc::InvalidArgument, "normals and support magnitudes differ in length");

  for (auto& u : normals_) {
    if (static_cast<int>(u.size()) != n)
      fail(Errc::InvalidArgument, "normal dimension mismatch");
    if (std::abs(norm(u) - 1.0) > 1e-6)
      fail(Errc::InvalidArgument, "facet normals must be unit vectors");
    u = normalized(u);
    if (!cone_.normal_in_dual_omega(u))
      fail(Errc::NormalOutsideDomain,
           "normal does not lie strictly inside Omega_{C°}");
  }
  for (double v : input_f_)
    if (!(v > 0.0)) fail(Errc::NonpositiveValue, "support magnitudes must be positive");
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (distance(normals_[i], normals_[j]) <= kGeomTol)
        fail(Errc::InvalidArgument,
             "duplicate facet normals " + std::to_string(i) + " and " +
                 std::to_string(j));

  delta_ = kPi;
  for (const auto& u : normals_)
    delta_ = std::min(delta_, cone_.angular_distance_to_dual_boundary(u));
  if (delta_ <= 0.0)
    fail(Errc::NormalOutsideDomain, "normal on the boundary of Omega_{C°}");

  // provisional truncation tall enough to contain every support facet
  double rho_axis = 0.0;
  for (int i = 0; i < m; ++i)
    rho_axis = std::max(rho_axis, input_f_[i] / -dot(cone_.axis, normals_[i]));
  const double t_prov = 1.5 * rho_axis / std::sin(delta_) + 1.0;

  TruncationPolytope prov = build_truncation(cone_, normals_, input_f_, t_prov);
  if (prov.vertices.empty() || affine_rank(prov.vertices) < n)
    fail(Errc::DegenerateIntersection, "truncated pseudo-cone is not full-dimensional");

  hbar_.assign(m, 0.0);
  for (int i = 0; i < m; ++i) {
    double mx = -std::numeric_limits<double>::infinity();
    for (const auto& v : prov.vertices) mx = std::max(mx, dot(v, normals_[i]));
    hbar_[i] = -mx;
  }
  active_.assign(m, false);
  for (int i = 0; i < m; ++i) active_[i] = prov.support_facet(i) != nullptr;

  b_ = norm(min_norm_point(prov.vertices));
  s_ = std::numeric_limits<double>::infinity();
  for (const auto& v : prov.vertices) s_ = std::min(s_, dot(v, cone_.axis));
  if (!(b_ > 0.0))
    fail(Errc::DegenerateIntersection, "pseudo-cone contains the origin");

  const double t_def = 1.1 * b_ / std::sin(delta_);
  trunc_ = build_truncation(cone_, normals_, input_f_, t_def);
  if (trunc_.vertices.empty())
    fail(Errc::DegenerateIntersection, "default truncation is empty");
}

std::vector<Vec> PseudoCone::facet_vertices(int i) const {
  if (i < 0 || i >= num_constraints())
    fail(Errc::InvalidArgument, "facet index out of range");
  const TruncationFacet* f = trunc_.support_facet(i);
  if (f == nullptr || !active_[i])
    fail(Errc::InactiveConstraint,
         "constraint " + std::to_string(i) + " does not carry a facet");
  return trunc_.facet_points(*f);
}

double PseudoCone::support_value(const Vec& u) const {
  Vec uu = normalized(u);
  if (!cone_.normal_in_dual_omega(uu))
    fail(Errc::NormalOutsideDomain, "direction not strictly inside Omega_{C°}");
  double mx = -std::numeric_limits<double>::infinity();
  for (const auto& v : trunc_.vertices) mx = std::max(mx, dot(v, uu));
  return -mx;
}

PseudoCone::RadialHit PseudoCone::radial_hit(const Vec& v) const {
  Vec vv = normalized(v);
  if (!cone_.direction_in_omega(vv))
    fail(Errc::DirectionOutsideOmegaC, "direction not strictly inside Omega_C");
  double rho = 0.0;
  int facet = 0;
  for (int i = 0; i < num_constraints(); ++i) {
    const double r = hbar_[i] / -dot(vv, normals_[i]);
    if (r > rho) {
      rho = r;
      facet = i;
    }
  }
  return {rho, facet};
}

bool PseudoCone::contains(const Vec& x, double tol) const {
  if (!cone_.contains(x, tol)) return false;
  for (int i = 0; i < num_constraints(); ++i)
    if (dot(x, normals_[i]) > -input_f_[i] + tol * (1.0 + norm(x))) return false;
  return true;
}

PseudoCone PseudoCone::dilated(double lambda) const {
  if (!(lambda > 0.0)) fail(Errc::NonpositiveValue, "dilation factor must be positive");
  Vec f = input_f_;
  for (double& v : f) v *= lambda;
  return PseudoCone(cone_, normals_, std::move(f));
}

TruncationPolytope truncate(const PseudoCone& K, double t) {
  if (t <= K.min_height() + kGeomTol)
    fail(Errc::HeightTooSmall, "height does not exceed the minimal axis height");
  return build_truncation(K.cone(), K.normals(), K.input_magnitudes(), t);
}

std::vector<int> order_polygon_vertices(const std::vector<Vec>& pts) {
  const int k = static_cast<int>(pts.size());
  if (k <= 2) {
    std::vector<int> ids(k);
    std::iota(ids.begin(), ids.end(), 0);
    return ids;
  }
  Vec c(pts[0].size(), 0.0);
  for (const auto& p : pts) axpy(c, 1.0 / k, p);

  // plane basis from the widest edge pair
  Vec e1, normal;
  double best = -1.0;
  for (int i = 1; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      const Vec a = sub(pts[i], pts[0]);
      const Vec b = sub(pts[j], pts[0]);
      const Vec cr{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
                   a[0] * b[1] - a[1] * b[0]};
      const double m = norm(cr);
      if (m > best) {
        best = m;
        normal = normalized(cr);
        e1 = normalized(a);
      }
    }
  const Vec e2{normal[1] * e1[2] - normal[2] * e1[1],
               normal[2] * e1[0] - normal[0] * e1[2],
               normal[0] * e1[1] - normal[1] * e1[0]};

  std::vector<std::pair<double, int>> ang(k);
  for (int i = 0; i < k; ++i) {
    const Vec d = sub(pts[i], c);
    ang[i] = {std::atan2(dot(d, e2), dot(d, e1)), i};
  }
  std::sort(ang.begin(), ang.end());
  std::vector<int> ids(k);
  for (int i = 0; i < k; ++i) ids[i] = ang[i].second;
  return ids;
}

std::vector<std::vector<Vec>> triangulate_facet(const std::vector<Vec>& pts) {
  if (pts.empty()) return {};
  const int n = static_cast<int>(pts[0].size());
  std::vector<Vec> uniq;
  for (const auto& p : pts) push_unique(uniq, p);
  if (uniq.size() < 2) return {};

  if (n == 2) {
    // segment: extreme pair
    std::size_t ai = 0, bi = 1;
    double best = 0.0;
    for (std::size_t i = 0; i < uniq.size(); ++i)
      for (std::size_t j = i + 1; j < uniq.size(); ++j) {
        const double d = distance(uniq[i], uniq[j]);
        if (d > best) {
          best = d;
          ai = i;
          bi = j;
        }
      }
    if (best <= 0.0) return {};
    return {{uniq[ai], uniq[bi]}};
  }
  if (n == 3) {
    if (affine_rank(uniq) < 2) return {};  // collinear: zero area
    const std::vector<int> order = order_polygon_vertices(uniq);
    Vec c(3, 0.0);
    for (const auto& p : uniq) axpy(c, 1.0 / static_cast<double>(uniq.size()), p);
    std::vector<std::vector<Vec>> tris;
    const int k = static_cast<int>(order.size());
    for (int i = 0; i < k; ++i) {
      std::vector<Vec> tri{c, uniq[order[i]], uniq[order[(i + 1) % k]]};
      if (simplex_volume(tri) > 0.0) tris.push_back(std::move(tri));
    }
    return tris;
  }
  fail(Errc::Unsupported, "facet triangulation supports dimensions 2 and 3");
}

}  // namespace pcone
