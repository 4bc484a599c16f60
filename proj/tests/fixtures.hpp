#pragma once

// Shared cone families and randomized pseudo-cone generators for the tests
// and the acceptance suite.

#include <cmath>
#include <random>
#include <vector>

#include "pcone/geometry.hpp"
#include "pcone/quadrature.hpp"

namespace fixtures {

using pcone::ConeSpec;
using pcone::PseudoCone;
using pcone::Vec;

inline ConeSpec quadrant2d() { return pcone::build_cone({{1, 0}, {0, 1}}); }

inline ConeSpec octant3d() {
  return pcone::build_cone({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
}

// pentagonal cone around the z-axis, half-angle alpha
inline ConeSpec pentagonal3d(double alpha = 0.7) {
  std::vector<Vec> rays;
  for (int k = 0; k < 5; ++k) {
    const double phi = 2.0 * 3.14159265358979323846 * k / 5.0;
    rays.push_back({std::cos(phi) * std::sin(alpha),
                    std::sin(phi) * std::sin(alpha), std::cos(alpha)});
  }
  return pcone::build_cone(rays);
}

// the standard 2D example: K = {x in quadrant : x1 + x2 >= sqrt(2)}
inline PseudoCone standard2d() {
  ConeSpec C = quadrant2d();
  const double s = 1.0 / std::sqrt(2.0);
  return PseudoCone(C, {{-s, -s}}, {1.0});
}

// random unit direction strictly inside Omega_{C°}: convex combination of
// the dual rays pushed toward their mean
inline Vec random_dual_direction(const ConeSpec& C, std::mt19937_64& rng,
                                 double interior_pull = 0.35) {
  std::uniform_real_distribution<double> uni(0.05, 1.0);
  Vec u(C.n, 0.0);
  double total = 0.0;
  for (const auto& w : C.dual_rays) {
    const double c = uni(rng);
    pcone::axpy(u, c, w);
    total += c;
  }
  Vec mean(C.n, 0.0);
  for (const auto& w : C.dual_rays)
    pcone::axpy(mean, 1.0 / C.dual_rays.size(), w);
  for (int i = 0; i < C.n; ++i)
    u[i] = (1.0 - interior_pull) * u[i] / total + interior_pull * mean[i];
  return pcone::normalized(u);
}

inline PseudoCone random_pseudocone(const ConeSpec& C, int atoms,
                                    std::mt19937_64& rng) {
  std::uniform_real_distribution<double> mag(0.5, 2.0);
  std::vector<Vec> normals;
  Vec f;
  for (int i = 0; i < atoms; ++i) {
    normals.push_back(random_dual_direction(C, rng));
    f.push_back(mag(rng));
  }
  return PseudoCone(C, normals, f);
}

// Pseudo-cone whose constraints are all active by construction: tangent
// halfspaces of the strictly convex surface x1*x2 = 1 (quadrant) or
// x1*x2*x3 = 1 (octant); no tangent of a strictly convex surface is
// redundant. Only for the coordinate cones.
inline PseudoCone strictly_convex_pseudocone(const ConeSpec& C, int atoms,
                                             std::mt19937_64& rng,
                                             double spread = 1.0) {
  std::uniform_real_distribution<double> jit(-0.35, 0.35);
  std::vector<Vec> normals;
  Vec f;
  if (C.n == 2) {
    for (int k = 0; k < atoms; ++k) {
      const double s =
          atoms == 1 ? jit(rng)
                     : spread * (2.0 * k / (atoms - 1.0) - 1.0) +
                           jit(rng) * spread / atoms;
      const double t = std::exp(s);
      Vec g{1.0 / t, t};  // gradient of x1*x2 at (t, 1/t)
      const double gn = pcone::norm(g);
      normals.push_back({-g[0] / gn, -g[1] / gn});
      f.push_back(2.0 / gn);
    }
  } else {
    for (int k = 0; k < atoms; ++k) {
      const double phi = 6.283185307179586 * k / atoms + 0.2 * jit(rng);
      const double rad = atoms == 1 ? 0.0 : spread * (0.5 + 0.5 * (k % 2)) +
                                                0.2 * jit(rng);
      const double la = rad * std::cos(phi), lb = rad * std::sin(phi);
      const double a = std::exp(la), b = std::exp(lb), c = 1.0 / (a * b);
      Vec g{1.0 / a, 1.0 / b, 1.0 / c};  // gradient of x1*x2*x3 at (a,b,c)
      const double gn = pcone::norm(g);
      normals.push_back({-g[0] / gn, -g[1] / gn, -g[2] / gn});
      f.push_back(3.0 / gn);
    }
  }
  return PseudoCone(C, normals, f);
}

}  // namespace fixtures
