#include <doctest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "pcone/measures.hpp"

using namespace pcone;
using doctest::Approx;

namespace {
const double kR2 = std::sqrt(2.0);
const double kR3 = std::sqrt(3.0);
// frozen from the independent 1D Simpson oracle (tests recompute it too)
const double kA = 1.66179243236187;
}  // namespace

TEST_CASE("2D example: all measures against the oracle") {
  const PseudoCone K = fixtures::standard2d();
  const WeightDensity theta(2, 1.5);

  const QuadratureResult s = weighted_surface_area(K, theta, 0, 1e-10);
  CHECK(s.value == Approx(kA).epsilon(1e-9));
  const double oracle = oracles::segment_integral(
      [&](const Vec& y) { return theta(y); }, {kR2, 0.0}, {0.0, kR2}, 1e-13);
  CHECK(s.value == Approx(oracle).epsilon(1e-9));

  const QuadratureResult v = weighted_cone_volume(K, theta, 0, 1e-10);
  CHECK(v.value == Approx(2.0 * kA).epsilon(1e-9));

  const UnweightedMeasures um = unweighted_measures(K, 0);
  CHECK(um.surface == Approx(2.0).epsilon(1e-12));
  CHECK(um.cone_volume == Approx(1.0).epsilon(1e-12));

  const QuadratureResult cov = weighted_covolume(K, theta, 1e-10);
  CHECK(cov.value == Approx(2.0 * kA).epsilon(1e-9));
}

TEST_CASE("2D example: radial route matches the facet route") {
  const PseudoCone K = fixtures::standard2d();
  const WeightDensity theta(2, 1.5);
  SphericalOptions opts;
  opts.tol = 1e-10;

  const QuadratureResult radial =
      weighted_cone_volume_radial(K, theta, {0}, opts);
  CHECK(radial.value == Approx(2.0 * kA).epsilon(1e-9));
  CHECK(radial.value == Approx(3.32358486472375).epsilon(1e-10));

  CHECK(weighted_cone_volume_radial(K, theta, {}, opts).value == 0.0);
}

TEST_CASE("2D example: MC route within 3 standard errors") {
  const PseudoCone K = fixtures::standard2d();
  const WeightDensity theta(2, 1.5);
  const QuadratureResult mc = mc_cone_region(
      theta, {{K.facet_vertices(0), K.support_magnitudes()[0]}}, 1'000'000, 42);
  CHECK(std::abs(mc.value - 2.0 * kA) <= 3.0 * mc.error);
}

TEST_CASE("inactive constraint yields zero measures") {
  const ConeSpec C = fixtures::quadrant2d();
  const double c8 = std::cos(3.14159265358979323846 / 8.0);
  const double s8 = std::sin(3.14159265358979323846 / 8.0);
  const PseudoCone K(C, {{-1.0 / kR2, -1.0 / kR2}, {-c8, -s8}}, {1.0, 0.5});
  const WeightDensity theta(2, 1.5);
  CHECK(weighted_surface_area(K, theta, 1).value == 0.0);
  CHECK(weighted_cone_volume(K, theta, 1).value == 0.0);
  CHECK_THROWS_AS((void)unweighted_measures(K, 1), Error);
}

TEST_CASE("3D octant facet: exact area and determinant oracle") {
  const ConeSpec C = fixtures::octant3d();
  const double s3 = 1.0 / kR3;
  const PseudoCone K(C, {{-s3, -s3, -s3}}, {1.0});

  const UnweightedMeasures um = unweighted_measures(K, 0);
  // area of the triangle (sqrt3,0,0),(0,sqrt3,0),(0,0,sqrt3) = (3 sqrt3)/2
  CHECK(um.surface == Approx(1.5 * kR3).epsilon(1e-12));
  CHECK(um.cone_volume == Approx(um.surface / 3.0).epsilon(1e-12));

  const double tet = oracles::tetra_volume({0, 0, 0}, {kR3, 0, 0}, {0, kR3, 0},
                                           {0, 0, kR3});
  CHECK(um.cone_volume == Approx(tet).epsilon(1e-12));
}

TEST_CASE("homogeneity laws under dilation") {
  std::mt19937_64 rng(31);
  const WeightDensity theta2(2, 1.5);
  const WeightDensity theta3(3, 2.5);
  for (int trial = 0; trial < 6; ++trial) {
    const bool is3d = trial % 2 == 1;
    const ConeSpec C = is3d ? fixtures::octant3d() : fixtures::quadrant2d();
    const WeightDensity& theta = is3d ? theta3 : theta2;
    const int n = C.n;
    const double q = theta.exponent();
    const PseudoCone K = fixtures::random_pseudocone(C, 1 + trial % 3, rng);
    const double lam = 1.0 + 0.5 * (trial + 1);
    const PseudoCone KL = K.dilated(lam);

    for (int i = 0; i < K.num_constraints(); ++i) {
      if (!K.constraint_active(i)) continue;
      const double s = weighted_surface_area(K, theta, i, 1e-9).value;
      const double sl = weighted_surface_area(KL, theta, i, 1e-9).value;
      CHECK(sl == Approx(std::pow(lam, n - 1 - q) * s).epsilon(1e-6));

      const double v = weighted_cone_volume(K, theta, i, 1e-9).value;
      const double vl = weighted_cone_volume(KL, theta, i, 1e-9).value;
      CHECK(vl == Approx(std::pow(lam, n - q) * v).epsilon(1e-6));

      const UnweightedMeasures um = unweighted_measures(K, i);
      const UnweightedMeasures uml = unweighted_measures(KL, i);
      CHECK(uml.surface ==
            Approx(std::pow(lam, n - 1) * um.surface).epsilon(1e-9));
      CHECK(uml.cone_volume ==
            Approx(std::pow(lam, n) * um.cone_volume).epsilon(1e-9));
    }
  }
}

TEST_CASE("three-route agreement on random pseudo-cones") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 8; ++trial) {
    const bool is3d = trial % 2 == 1;
    const ConeSpec C = is3d ? (trial % 4 == 1 ? fixtures::octant3d()
                                              : fixtures::pentagonal3d())
                            : fixtures::quadrant2d();
    const WeightDensity theta(C.n, C.n - 0.4);
    const PseudoCone K = fixtures::random_pseudocone(C, 2 + trial % 3, rng);

    std::vector<int> all;
    for (int i = 0; i < K.num_constraints(); ++i) all.push_back(i);

    const QuadratureResult facet = weighted_covolume(K, theta, 1e-9);
    SphericalOptions sopts;
    sopts.tol = 1e-9;
    sopts.mc_samples = 400'000;
    sopts.seed = 1000 + trial;
    const QuadratureResult radial =
        weighted_cone_volume_radial(K, theta, all, sopts);
    if (!is3d) {
      CHECK(radial.value == Approx(facet.value).epsilon(1e-6));
    } else {
      CHECK(std::abs(radial.value - facet.value) <=
            3.0 * radial.error + 1e-6 * facet.value);
    }

    std::vector<ConeRegionFacet> region;
    for (int i = 0; i < K.num_constraints(); ++i)
      if (K.constraint_active(i))
        region.push_back({K.facet_vertices(i), K.support_magnitudes()[i]});
    const QuadratureResult mc =
        mc_cone_region(theta, region, 400'000, 2000 + trial);
    CHECK(std::abs(mc.value - facet.value) <=
          3.0 * mc.error + 1e-6 * facet.value);
  }
}

TEST_CASE("integral transform identity for the surface measure") {
  std::mt19937_64 rng(53);
  // n = 2 deterministic
  for (int trial = 0; trial < 4; ++trial) {
    const ConeSpec C = fixtures::quadrant2d();
    const WeightDensity theta(2, 1.5);
    const PseudoCone K = fixtures::random_pseudocone(C, 2 + trial, rng);
    SphericalOptions opts;
    opts.tol = 1e-10;
    for (int i = 0; i < K.num_constraints(); ++i) {
      const double facet = weighted_surface_area(K, theta, i, 1e-10).value;
      const double transform =
          weighted_surface_area_radial(K, theta, {i}, opts).value;
      CHECK(transform == Approx(facet).epsilon(1e-6));
    }
  }
  // n = 3 Monte-Carlo
  const ConeSpec C = fixtures::octant3d();
  const WeightDensity theta(3, 2.5);
  const PseudoCone K = fixtures::random_pseudocone(C, 3, rng);
  SphericalOptions opts;
  opts.mc_samples = 400'000;
  opts.seed = 77;
  std::vector<int> all{0, 1, 2};
  double facet_total = 0.0;
  for (int i : all) facet_total += weighted_surface_area(K, theta, i, 1e-9).value;
  const QuadratureResult transform =
      weighted_surface_area_radial(K, theta, all, opts);
  CHECK(std::abs(transform.value - facet_total) <=
        3.0 * transform.error + 1e-6 * facet_total);
}

TEST_CASE("route agreement with the axis-power density") {
  std::mt19937_64 rng(79);
  const ConeSpec C = fixtures::quadrant2d();
  const WeightDensity theta(2, 1.5, 2.0, C.axis);
  const PseudoCone K = fixtures::random_pseudocone(C, 3, rng);
  std::vector<int> all{0, 1, 2};

  const double facet = weighted_covolume(K, theta, 1e-10).value;
  SphericalOptions opts;
  opts.tol = 1e-10;
  const double radial = weighted_cone_volume_radial(K, theta, all, opts).value;
  CHECK(radial == Approx(facet).epsilon(1e-8));

  std::vector<ConeRegionFacet> region;
  for (int i = 0; i < 3; ++i)
    if (K.constraint_active(i))
      region.push_back({K.facet_vertices(i), K.support_magnitudes()[i]});
  const QuadratureResult mc = mc_cone_region(theta, region, 400'000, 4711);
  CHECK(std::abs(mc.value - facet) <= 3.0 * mc.error);
}

TEST_CASE("radial route is independent of the ray listing order") {
  // reversed rays flip the angular orientation of Omega_C
  const ConeSpec Ca = build_cone({{1, 0}, {0, 1}});
  const ConeSpec Cb = build_cone({{0, 1}, {1, 0}});
  const double s = 1.0 / kR2;
  const WeightDensity theta(2, 1.5);
  SphericalOptions opts;
  opts.tol = 1e-10;
  const PseudoCone Ka(Ca, {{-s, -s}}, {1.0});
  const PseudoCone Kb(Cb, {{-s, -s}}, {1.0});
  CHECK(weighted_cone_volume_radial(Ka, theta, {0}, opts).value ==
        Approx(weighted_cone_volume_radial(Kb, theta, {0}, opts).value)
            .epsilon(1e-10));
}

TEST_CASE("covolume monotone under deeper cuts") {
  std::mt19937_64 rng(61);
  const ConeSpec C = fixtures::quadrant2d();
  const WeightDensity theta(2, 1.5);
  const PseudoCone K = fixtures::random_pseudocone(C, 3, rng);
  const double base = weighted_covolume(K, theta, 1e-9).value;
  for (int i = 0; i < K.num_constraints(); ++i) {
    Vec f = K.input_magnitudes();
    f[i] *= 1.3;
    const PseudoCone K2(C, K.normals(), f);
    CHECK(weighted_covolume(K2, theta, 1e-9).value >= base - 1e-8);
  }
}

TEST_CASE("covolume of a near-boundary wulff shape vs MC") {
  // normals pulled slightly inside Omega_{C°} from the cone facet normals:
  // the closest PseudoCone stand-in for a shifted cone C + z
  const ConeSpec C = fixtures::quadrant2d();
  const WeightDensity theta(2, 1.5);
  const double eps = 0.05;
  auto tilt = [&](const Vec& w) {
    return normalized(add(scale(w, 1.0 - eps), scale(C.axis, -eps)));
  };
  const PseudoCone K(C, {tilt(C.dual_rays[0]), tilt(C.dual_rays[1])},
                     {0.6, 0.8});
  const double facet = weighted_covolume(K, theta, 1e-9).value;
  std::vector<ConeRegionFacet> region;
  for (int i = 0; i < 2; ++i)
    region.push_back({K.facet_vertices(i), K.support_magnitudes()[i]});
  const QuadratureResult mc = mc_cone_region(theta, region, 600'000, 4242);
  CHECK(std::abs(mc.value - facet) <= 3.0 * mc.error);
}

TEST_CASE("measure report totals, additivity, and threading determinism") {
  std::mt19937_64 rng(71);
  const ConeSpec C = fixtures::octant3d();
  const WeightDensity theta(3, 2.5);
  const PseudoCone K = fixtures::random_pseudocone(C, 4, rng);

  MeasureOptions opts;
  opts.tol = 1e-8;
  opts.with_radial = true;
  opts.with_mc = true;
  opts.mc_samples = 200'000;
  opts.seed = 5;
  const MeasureReport a = measure_report(K, theta, opts);

  double sum = 0.0;
  for (const auto& atom : a.atoms) {
    CHECK(std::isfinite(atom.surface_theta));
    CHECK(std::isfinite(atom.cone_volume_theta));
    if (atom.active)
      CHECK(atom.cone_volume_theta ==
            Approx(atom.hbar * atom.surface_theta / 0.5).epsilon(1e-12));
    sum += atom.cone_volume_theta;
  }
  CHECK(a.covolume_theta == Approx(sum).epsilon(1e-15));
  CHECK(a.radial_route.computed);
  CHECK(a.mc_route.computed);

  MeasureOptions par = opts;
  par.threads = 4;
  const MeasureReport b = measure_report(K, theta, par);
  for (std::size_t i = 0; i < a.atoms.size(); ++i) {
    CHECK(a.atoms[i].surface_theta == b.atoms[i].surface_theta);
    CHECK(a.atoms[i].cone_volume_theta == b.atoms[i].cone_volume_theta);
  }
  CHECK(a.mc_route.value == b.mc_route.value);
}
