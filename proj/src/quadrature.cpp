#include "pcone/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pcone/rng.hpp"

namespace pcone {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 6.28318530717958647692;

}  // namespace

WeightDensity::WeightDensity(int n, double q)
    : n_(n), q_(q), psi_(Psi::Constant) {
  if (!(q > n - 1.0) || !(q < static_cast<double>(n)))
    fail(Errc::InvalidArgument, "q must lie in (n-1, n)");
}

WeightDensity::WeightDensity(int n, double q, double power, Vec axis)
    : n_(n), q_(q), psi_(Psi::AxisPower), power_(power), axis_(std::move(axis)) {
  if (!(q > n - 1.0) || !(q < static_cast<double>(n)))
    fail(Errc::InvalidArgument, "q must lie in (n-1, n)");
  if (power_ < 0.0) fail(Errc::InvalidArgument, "axis power must be >= 0");
  if (static_cast<int>(axis_.size()) != n)
    fail(Errc::InvalidArgument, "axis dimension mismatch");
  axis_ = normalized(axis_);
}

double WeightDensity::operator()(const Vec& y) const {
  const double m = norm(y);
  double psi = 1.0;
  if (psi_ == Psi::AxisPower) psi = std::pow(dot(y, axis_) / m, power_);
  return std::pow(m, -q_) * psi;
}

double WeightDensity::spherical_factor(const Vec& v) const {
  if (psi_ == Psi::Constant) return 1.0;
  return std::pow(dot(v, axis_), power_);
}

namespace {

using Fn = std::function<double(const Vec&)>;

// --- fixed rules -----------------------------------------------------------

// Gauss-Legendre 5 on a segment [a,b] in R^n (degree 9)
double rule_segment(const Fn& f, const Vec& a, const Vec& b, long& evals) {
  static const double x1 = 0.53846931010568309104;  // sqrt(5-2*sqrt(10/7))/3
  static const double x2 = 0.90617984593866399280;  // sqrt(5+2*sqrt(10/7))/3
  static const double w0 = 128.0 / 225.0;
  static const double w1 = (322.0 + 13.0 * std::sqrt(70.0)) / 900.0;
  static const double w2 = (322.0 - 13.0 * std::sqrt(70.0)) / 900.0;
  static const double nodes[5] = {-x2, -x1, 0.0, x1, x2};
  static const double weights[5] = {w2, w1, w0, w1, w2};

  const std::size_t n = a.size();
  Vec mid(n), half(n), p(n);
  for (std::size_t i = 0; i < n; ++i) {
    mid[i] = 0.5 * (a[i] + b[i]);
    half[i] = 0.5 * (b[i] - a[i]);
  }
  const double len = distance(a, b);
  double s = 0.0;
  for (int k = 0; k < 5; ++k) {
    for (std::size_t i = 0; i < n; ++i) p[i] = mid[i] + nodes[k] * half[i];
    s += weights[k] * f(p);
  }
  evals += 5;
  return 0.5 * len * s;
}

// 7-point degree-5 rule on a triangle (A,B,C) in R^n
double rule_triangle(const Fn& f, const std::vector<Vec>& tri, double area,
                     long& evals) {
  static const double s15 = std::sqrt(15.0);
  static const double g1 = (6.0 - s15) / 21.0;
  static const double g2 = (6.0 + s15) / 21.0;
  static const double w0 = 9.0 / 40.0;
  static const double w1 = (155.0 - s15) / 1200.0;
  static const double w2 = (155.0 + s15) / 1200.0;

  const std::size_t n = tri[0].size();
  Vec p(n);
  auto at = [&](double l0, double l1, double l2) {
    for (std::size_t i = 0; i < n; ++i)
      p[i] = l0 * tri[0][i] + l1 * tri[1][i] + l2 * tri[2][i];
    return f(p);
  };
  double s = w0 * at(1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0);
  s += w1 * (at(g1, g1, 1 - 2 * g1) + at(g1, 1 - 2 * g1, g1) + at(1 - 2 * g1, g1, g1));
  s += w2 * (at(g2, g2, 1 - 2 * g2) + at(g2, 1 - 2 * g2, g2) + at(1 - 2 * g2, g2, g2));
  evals += 7;
  return area * s;
}

double rule_any(const Fn& f, const std::vector<Vec>& simplex, long& evals) {
  if (simplex.size() == 2) return rule_segment(f, simplex[0], simplex[1], evals);
  return rule_triangle(f, simplex, simplex_volume(simplex), evals);
}

void split_longest_edge(const std::vector<Vec>& simplex,
                        std::vector<Vec>& left, std::vector<Vec>& right) {
  std::size_t ai = 0, bi = 1;
  double best = -1.0;
  for (std::size_t i = 0; i < simplex.size(); ++i)
    for (std::size_t j = i + 1; j < simplex.size(); ++j) {
      const double d = distance(simplex[i], simplex[j]);
      if (d > best) {
        best = d;
        ai = i;
        bi = j;
      }
    }
  Vec mid = scale(add(simplex[ai], simplex[bi]), 0.5);
  left = simplex;
  right = simplex;
  left[bi] = mid;
  right[ai] = mid;
}

struct AdaptiveState {
  const Fn* f;
  long budget;
  QuadratureResult res;
};

void adapt(AdaptiveState& st, const std::vector<Vec>& simplex, double coarse,
           double tol, int depth) {
  if (st.res.evaluations > st.budget)
    fail(Errc::BudgetExceeded, "simplex quadrature evaluation budget exhausted");
  std::vector<Vec> left, right;
  split_longest_edge(simplex, left, right);
  const double cl = rule_any(*st.f, left, st.res.evaluations);
  const double cr = rule_any(*st.f, right, st.res.evaluations);
  const double fine = cl + cr;
  const double err = std::abs(fine - coarse);
  if (err <= tol || depth >= 48) {
    st.res.value += fine;
    st.res.error += err;
    return;
  }
  adapt(st, left, cl, 0.5 * tol, depth + 1);
  adapt(st, right, cr, 0.5 * tol, depth + 1);
}

QuadratureResult integrate_simplex_fn(const Fn& f,
                                      const std::vector<Vec>& simplex,
                                      double tol, long budget) {
  AdaptiveState st{&f, budget, {}};
  const double coarse = rule_any(f, simplex, st.res.evaluations);
  adapt(st, simplex, coarse, tol, 0);
  return st.res;
}

void check_origin_distance(const std::vector<Vec>& vertices) {
  double scale = 1.0;
  for (const auto& v : vertices) scale = std::max(scale, norm(v));
  if (norm(min_norm_point(vertices)) <= 1e-9 * scale)
    fail(Errc::OriginTooClose,
         "integration domain touches the origin; the density is singular there");
}

}  // namespace

QuadratureResult integrate_simplex(const WeightDensity& density,
                                   const std::vector<Vec>& simplex, double tol,
                                   long budget) {
  if (!(tol > 0.0)) fail(Errc::InvalidArgument, "tolerance must be positive");
  if (simplex.size() < 2 || simplex.size() > 3)
    fail(Errc::Unsupported, "only segments and triangles are integrable");
  if (simplex_volume(simplex) == 0.0) return {0.0, 0.0, 0};
  check_origin_distance(simplex);
  Fn f = [&density](const Vec& y) { return density(y); };
  return integrate_simplex_fn(f, simplex, tol, budget);
}

QuadratureResult integrate_function(const std::function<double(const Vec&)>& f,
                                    const std::vector<Vec>& simplex, double tol,
                                    long budget) {
  if (simplex.size() < 2 || simplex.size() > 3)
    fail(Errc::Unsupported, "only segments and triangles are integrable");
  if (simplex.size() == 3 && simplex_volume(simplex) == 0.0) return {0.0, 0.0, 0};
  return integrate_simplex_fn(f, simplex, tol, budget);
}

QuadratureResult integrate_function_1d(const std::function<double(double)>& f,
                                       double a, double b, double tol,
                                       long budget) {
  Fn wrapped = [&f](const Vec& x) { return f(x[0]); };
  if (a == b) return {0.0, 0.0, 0};
  return integrate_simplex_fn(wrapped, {Vec{a}, Vec{b}}, tol, budget);
}

QuadratureResult integrate_facet(const WeightDensity& density,
                                 const std::vector<Vec>& facet, double tol,
                                 long budget) {
  if (!(tol > 0.0)) fail(Errc::InvalidArgument, "tolerance must be positive");
  const std::vector<std::vector<Vec>> tris = triangulate_facet(facet);
  if (tris.empty()) return {0.0, 0.0, 0};
  check_origin_distance(facet);

  double total_vol = 0.0;
  for (const auto& s : tris) total_vol += simplex_volume(s);
  Fn f = [&density](const Vec& y) { return density(y); };

  QuadratureResult res;
  for (const auto& s : tris) {
    const double share = simplex_volume(s) / total_vol;
    QuadratureResult part =
        integrate_simplex_fn(f, s, std::max(tol * share, 1e-18), budget - res.evaluations);
    res.value += part.value;
    res.error += part.error;
    res.evaluations += part.evaluations;
  }
  return res;
}

QuadratureResult spherical_region_integral(
    const ConeSpec& cone, const std::function<double(const Vec&)>& g,
    const SphericalOptions& opts) {
  if (cone.n == 2) {
    const Vec& r0 = cone.extreme_rays[0];
    const Vec& r1 = cone.extreme_rays[1];
    const double t0 = std::atan2(r0[1], r0[0]);
    const double cross = r0[0] * r1[1] - r0[1] * r1[0];
    const double span = std::atan2(std::abs(cross), dot(r0, r1));
    const double sgn = cross >= 0.0 ? 1.0 : -1.0;

    Fn f = [&](const Vec& th) {
      const double a = t0 + sgn * th[0];
      return g(Vec{std::cos(a), std::sin(a)});
    };
    return integrate_simplex_fn(f, {Vec{0.0}, Vec{span}}, opts.tol, kQuadBudget);
  }

  if (cone.n == 3) {
    // bounding cap around the axis; widest vertex of the spherical polygon
    double zmin = 1.0;
    for (const auto& r : cone.extreme_rays) zmin = std::min(zmin, dot(r, cone.axis));
    zmin = std::max(-1.0, zmin - 1e-12);

    // frame orthogonal to the axis
    Vec e1(3, 0.0);
    e1[std::abs(cone.axis[0]) < 0.9 ? 0 : 1] = 1.0;
    axpy(e1, -dot(e1, cone.axis), cone.axis);
    e1 = normalized(e1);
    const Vec e2{cone.axis[1] * e1[2] - cone.axis[2] * e1[1],
                 cone.axis[2] * e1[0] - cone.axis[0] * e1[2],
                 cone.axis[0] * e1[1] - cone.axis[1] * e1[0]};

    const int strata = std::max(1, opts.strata);
    const long per = std::max<long>(1, opts.mc_samples / strata);
    const double band = (1.0 - zmin) / strata;
    const double cap_area = kTwoPi * (1.0 - zmin);
    const double stratum_area = cap_area / strata;

    double total = 0.0, var = 0.0;
    long evals = 0;
    Vec v(3);
    for (int k = 0; k < strata; ++k) {
      CounterRng rng(opts.seed, static_cast<std::uint64_t>(k));
      double sum = 0.0, sumsq = 0.0;
      for (long s = 0; s < per; ++s) {
        const double z = zmin + band * (k + rng.uniform());
        const double phi = kTwoPi * rng.uniform();
        const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
        for (int c = 0; c < 3; ++c)
          v[c] = z * cone.axis[c] + rho * (std::cos(phi) * e1[c] + std::sin(phi) * e2[c]);
        double val = 0.0;
        if (cone.direction_in_omega(v)) val = g(v);
        sum += val;
        sumsq += val * val;
        ++evals;
      }
      const double mean = sum / per;
      const double m2 = std::max(0.0, sumsq / per - mean * mean);
      total += stratum_area * mean;
      var += stratum_area * stratum_area * m2 / per;
    }
    return {total, std::sqrt(var), evals};
  }

  fail(Errc::Unsupported, "spherical integration supports dimensions 2 and 3");
}

QuadratureResult mc_cone_region(const WeightDensity& density,
                                const std::vector<ConeRegionFacet>& region,
                                long samples, std::uint64_t seed) {
  if (region.empty()) fail(Errc::EmptyRegion, "no facets in the cone region");
  if (samples < 1) fail(Errc::InvalidArgument, "sample count must be >= 1");

  struct Tri {
    std::vector<Vec> s;
    double area;
    double offset;
  };
  std::vector<Tri> tris;
  double total_area = 0.0;
  for (const auto& f : region) {
    for (auto& s : triangulate_facet(f.vertices)) {
      const double a = simplex_volume(s);
      if (a <= 0.0) continue;
      total_area += a;
      tris.push_back({std::move(s), a, f.offset});
    }
  }
  if (tris.empty() || total_area <= 0.0) return {0.0, 0.0, 0};

  std::vector<double> cum(tris.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < tris.size(); ++i) {
    acc += tris[i].area;
    cum[i] = acc;
  }

  const int n = density.dim();
  const double q = density.exponent();
  // radial density p(t) = c t^{c-1} on (0,1], c = 1.5 (n-q): finite variance
  const double c_exp = 1.5 * (n - q);

  const long block_size = 65536;
  double sum = 0.0, sumsq = 0.0;
  long done = 0;
  Vec x(n), y(n);
  std::vector<double> bary;
  for (std::uint64_t block = 0; done < samples; ++block) {
    CounterRng rng(seed, block);
    const long count = std::min(block_size, samples - done);
    for (long s = 0; s < count; ++s) {
      const double pick = rng.uniform() * total_area;
      std::size_t ti =
          std::lower_bound(cum.begin(), cum.end(), pick) - cum.begin();
      if (ti >= tris.size()) ti = tris.size() - 1;
      const Tri& tri = tris[ti];

      // uniform barycentric point (Dirichlet(1,..,1))
      bary.assign(tri.s.size(), 0.0);
      double bsum = 0.0;
      for (double& b : bary) {
        b = -std::log(rng.uniform_pos());
        bsum += b;
      }
      std::fill(x.begin(), x.end(), 0.0);
      for (std::size_t k = 0; k < tri.s.size(); ++k)
        axpy(x, bary[k] / bsum, tri.s[k]);

      const double t = std::pow(rng.uniform_pos(), 1.0 / c_exp);
      for (int c = 0; c < n; ++c) y[c] = t * x[c];
      // weight = Θ(t x) t^{n-1} h̄ A / p(t)
      const double w = density(y) * std::pow(t, n - c_exp) * tri.offset *
                       total_area / c_exp;
      sum += w;
      sumsq += w * w;
    }
    done += count;
  }
  const double mean = sum / samples;
  const double m2 = std::max(0.0, sumsq / samples - mean * mean);
  const double se = samples > 1 ? std::sqrt(m2 / samples) : std::abs(mean);
  return {mean, se, samples};
}

QuadratureResult weighted_ball_measure(const ConeSpec& cone,
                                       const WeightDensity& density, double r,
                                       const SphericalOptions& opts) {
  if (!(r > 0.0)) fail(Errc::InvalidArgument, "radius must be positive");
  QuadratureResult sphere = spherical_region_integral(
      cone, [&](const Vec& v) { return density.spherical_factor(v); }, opts);
  const double factor =
      std::pow(r, cone.n - density.exponent()) / (cone.n - density.exponent());
  return {factor * sphere.value, factor * sphere.error, sphere.evaluations};
}

}  // namespace pcone
