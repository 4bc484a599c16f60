#include "pcone/measures.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>

namespace pcone {

namespace {

constexpr double kPi = 3.14159265358979323846;

double arc_rho(const PseudoCone& K, const Vec& v, int facet) {
  return K.support_magnitudes()[facet] / -dot(v, K.normals()[facet]);
}

int arc_binding_facet(const PseudoCone& K, const Vec& v) {
  double rho = 0.0;
  int facet = 0;
  for (int i = 0; i < K.num_constraints(); ++i) {
    const double r = arc_rho(K, v, i);
    if (r > rho) {
      rho = r;
      facet = i;
    }
  }
  return facet;
}

bool in_omega(const std::vector<int>& omega, int facet) {
  return std::find(omega.begin(), omega.end(), facet) != omega.end();
}

// shared n=2 deterministic arc integration and n=3 Monte-Carlo dispatch for
// integrands of the form c(facet) * psi(v) * rho^p / |<v,u_facet>|^e
QuadratureResult radial_route(const PseudoCone& K, const WeightDensity& density,
                              const std::vector<int>& omega, double rho_power,
                              double denom_power, double outer_factor,
                              const SphericalOptions& opts) {
  for (int i : omega)
    if (i < 0 || i >= K.num_constraints())
      fail(Errc::InvalidArgument, "facet index out of range");
  if (omega.empty()) return {0.0, 0.0, 0};

  if (K.dim() == 2) {
    const ArcDecomposition dec = radial_arcs(K);
    QuadratureResult res;
    for (const RadialArc& arc : dec.arcs) {
      if (!in_omega(omega, arc.facet)) continue;
      const double len = arc.theta1 - arc.theta0;
      auto f = [&](double th) {
        const Vec v = dec.direction(th);
        const double rho = arc_rho(K, v, arc.facet);
        const double den =
            std::pow(std::abs(dot(v, K.normals()[arc.facet])), denom_power);
        return density.spherical_factor(v) * std::pow(rho, rho_power) / den;
      };
      QuadratureResult part = integrate_function_1d(
          f, arc.theta0, arc.theta1,
          std::max(opts.tol * len / dec.span, 1e-18));
      res.value += part.value;
      res.error += part.error;
      res.evaluations += part.evaluations;
    }
    res.value *= outer_factor;
    res.error *= outer_factor;
    return res;
  }

  if (K.dim() == 3) {
    auto g = [&](const Vec& v) -> double {
      double rho = 0.0;
      int facet = 0;
      for (int i = 0; i < K.num_constraints(); ++i) {
        const double r = arc_rho(K, v, i);
        if (r > rho) {
          rho = r;
          facet = i;
        }
      }
      if (!in_omega(omega, facet)) return 0.0;
      const double den =
          std::pow(std::abs(dot(v, K.normals()[facet])), denom_power);
      return density.spherical_factor(v) * std::pow(rho, rho_power) / den;
    };
    QuadratureResult res = spherical_region_integral(K.cone(), g, opts);
    res.value *= outer_factor;
    res.error *= outer_factor;
    return res;
  }

  fail(Errc::Unsupported, "radial route supports dimensions 2 and 3");
}

}  // namespace

QuadratureResult weighted_surface_area(const PseudoCone& K,
                                       const WeightDensity& density, int i,
                                       double tol) {
  if (i < 0 || i >= K.num_constraints())
    fail(Errc::InvalidArgument, "facet index out of range");
  if (!K.constraint_active(i)) return {0.0, 0.0, 0};
  return integrate_facet(density, K.facet_vertices(i), tol);
}

QuadratureResult weighted_cone_volume(const PseudoCone& K,
                                      const WeightDensity& density, int i,
                                      double tol) {
  QuadratureResult s = weighted_surface_area(K, density, i, tol);
  const double factor =
      K.support_magnitudes()[i] / (K.dim() - density.exponent());
  return {factor * s.value, factor * s.error, s.evaluations};
}

UnweightedMeasures unweighted_measures(const PseudoCone& K, int i) {
  if (i < 0 || i >= K.num_constraints())
    fail(Errc::InvalidArgument, "facet index out of range");
  if (!K.constraint_active(i))
    fail(Errc::InactiveConstraint,
         "constraint " + std::to_string(i) + " does not carry a facet");
  double area = 0.0;
  for (const auto& s : triangulate_facet(K.facet_vertices(i)))
    area += simplex_volume(s);
  return {area, K.support_magnitudes()[i] * area / K.dim()};
}

QuadratureResult weighted_covolume(const PseudoCone& K,
                                   const WeightDensity& density, double tol) {
  QuadratureResult res;
  for (int i = 0; i < K.num_constraints(); ++i) {
    QuadratureResult part = weighted_cone_volume(K, density, i, tol);
    res.value += part.value;
    res.error += part.error;
    res.evaluations += part.evaluations;
  }
  return res;
}

ArcDecomposition radial_arcs(const PseudoCone& K) {
  if (K.dim() != 2)
    fail(Errc::Unsupported, "arc decomposition is a 2-dimensional construction");
  const ConeSpec& cone = K.cone();
  const Vec& r0 = cone.extreme_rays[0];
  const Vec& r1 = cone.extreme_rays[1];

  ArcDecomposition dec;
  dec.base_angle = std::atan2(r0[1], r0[0]);
  const double cross = r0[0] * r1[1] - r0[1] * r1[0];
  dec.orientation = cross >= 0.0 ? 1.0 : -1.0;
  dec.span = std::atan2(std::abs(cross), dot(r0, r1));

  // candidate switch angles: v ⊥ (h̄_i u_j - h̄_j u_i) for every pair
  std::vector<double> cuts{0.0, dec.span};
  const int m = K.num_constraints();
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      Vec d = sub(scale(K.normals()[j], K.support_magnitudes()[i]),
                  scale(K.normals()[i], K.support_magnitudes()[j]));
      if (norm(d) < 1e-14) continue;
      const double phi = std::atan2(d[1], d[0]);
      for (double cand : {phi + kPi / 2.0, phi - kPi / 2.0}) {
        double th = dec.orientation * (cand - dec.base_angle);
        th = std::fmod(th, 2.0 * kPi);
        if (th < 0.0) th += 2.0 * kPi;
        if (th > 1e-12 && th < dec.span - 1e-12) cuts.push_back(th);
      }
    }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(),
                         [](double a, double b) { return std::abs(a - b) < 1e-12; }),
             cuts.end());

  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double mid = 0.5 * (cuts[k] + cuts[k + 1]);
    const int facet = arc_binding_facet(K, dec.direction(mid));
    if (!dec.arcs.empty() && dec.arcs.back().facet == facet)
      dec.arcs.back().theta1 = cuts[k + 1];  // merge spurious cuts
    else
      dec.arcs.push_back({cuts[k], cuts[k + 1], facet});
  }
  return dec;
}

QuadratureResult weighted_cone_volume_radial(const PseudoCone& K,
                                             const WeightDensity& density,
                                             const std::vector<int>& omega,
                                             const SphericalOptions& opts) {
  const double nq = K.dim() - density.exponent();
  return radial_route(K, density, omega, nq, 0.0, 1.0 / nq, opts);
}

QuadratureResult weighted_surface_area_radial(const PseudoCone& K,
                                              const WeightDensity& density,
                                              const std::vector<int>& omega,
                                              const SphericalOptions& opts) {
  const double p = K.dim() - 1 - density.exponent();
  return radial_route(K, density, omega, p, 1.0, 1.0, opts);
}

MeasureReport measure_report(const PseudoCone& K, const WeightDensity& density,
                             const MeasureOptions& opts) {
  const int m = K.num_constraints();
  MeasureReport rep;
  rep.atoms.resize(m);

  auto compute_atom = [&](int i) {
    DirectionMeasure& a = rep.atoms[i];
    a.index = i;
    a.u = K.normals()[i];
    a.hbar = K.support_magnitudes()[i];
    a.active = K.constraint_active(i);
    const QuadratureResult s = weighted_surface_area(K, density, i, opts.tol);
    a.surface_theta = s.value;
    a.surface_theta_err = s.error;
    const double factor = a.hbar / (K.dim() - density.exponent());
    a.cone_volume_theta = factor * s.value;
    a.cone_volume_theta_err = factor * s.error;
    if (a.active) {
      const UnweightedMeasures um = unweighted_measures(K, i);
      a.surface = um.surface;
      a.cone_volume = um.cone_volume;
    } else {
      a.surface = 0.0;
      a.cone_volume = 0.0;
    }
  };

  if (opts.threads > 1 && m > 1) {
    std::vector<std::future<void>> futs;
    std::atomic<int> next{0};
    const int workers = std::min(opts.threads, m);
    for (int w = 0; w < workers; ++w)
      futs.push_back(std::async(std::launch::async, [&]() {
        for (int i = next.fetch_add(1); i < m; i = next.fetch_add(1))
          compute_atom(i);
      }));
    for (auto& f : futs) f.get();
  } else {
    for (int i = 0; i < m; ++i) compute_atom(i);
  }

  for (const auto& a : rep.atoms) {
    rep.covolume_theta += a.cone_volume_theta;
    rep.covolume_theta_err += a.cone_volume_theta_err;
    rep.covolume_unweighted += a.cone_volume;
    rep.surface_theta_total += a.surface_theta;
  }

  std::vector<int> all(m);
  for (int i = 0; i < m; ++i) all[i] = i;

  if (opts.with_radial) {
    SphericalOptions sopts{opts.tol, opts.mc_samples, opts.seed, 64};
    const QuadratureResult r =
        weighted_cone_volume_radial(K, density, all, sopts);
    rep.radial_route = {true, r.value, r.error};
  }
  if (opts.with_mc) {
    std::vector<ConeRegionFacet> region;
    for (int i = 0; i < m; ++i)
      if (K.constraint_active(i))
        region.push_back({K.facet_vertices(i), K.support_magnitudes()[i]});
    if (!region.empty()) {
      const QuadratureResult r =
          mc_cone_region(density, region, opts.mc_samples, opts.seed);
      rep.mc_route = {true, r.value, r.error};
    }
  }
  return rep;
}

}  // namespace pcone
