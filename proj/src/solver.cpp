#include "pcone/solver.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <limits>

#include "pcone/bounds.hpp"

namespace pcone {

namespace {

struct EvalData {
  PseudoCone K;
  double G;
  Vec grad_log;  // ∂G/∂(log f_i) = φ̂_i - f_i S^Θ_i / ((n-q) V_Θ)
  double v_theta;
  Vec v_atoms;
  Vec s_atoms;
};

Vec per_atom_surface(const PseudoCone& K, const WeightDensity& density,
                     double tol, int threads) {
  const int m = K.num_constraints();
  Vec s(m, 0.0);
  if (threads > 1 && m > 1) {
    std::atomic<int> next{0};
    std::vector<std::future<void>> futs;
    for (int w = 0; w < std::min(threads, m); ++w)
      futs.push_back(std::async(std::launch::async, [&]() {
        for (int i = next.fetch_add(1); i < m; i = next.fetch_add(1))
          s[i] = weighted_surface_area(K, density, i, tol).value;
      }));
    for (auto& f : futs) f.get();
  } else {
    for (int i = 0; i < m; ++i)
      s[i] = weighted_surface_area(K, density, i, tol).value;
  }
  return s;
}

EvalData evaluate_f(const ConeSpec& cone, const WeightDensity& density,
                    const std::vector<Vec>& normals, const Vec& f,
                    const Vec& weights, double tol, int threads) {
  PseudoCone K(cone, normals, f);
  const int m = K.num_constraints();
  const double nq = cone.n - density.exponent();

  Vec s = per_atom_surface(K, density, tol, threads);
  Vec v(m, 0.0);
  double v_total = 0.0;
  for (int i = 0; i < m; ++i) {
    v[i] = K.support_magnitudes()[i] * s[i] / nq;
    v_total += v[i];
  }

  double G = -std::log(v_total) / nq;
  Vec grad(m, 0.0);
  for (int i = 0; i < m; ++i) {
    G += weights[i] * std::log(f[i]);
    grad[i] = weights[i] - f[i] * s[i] / (nq * v_total);
  }
  return {std::move(K), G, std::move(grad), v_total, std::move(v), std::move(s)};
}

}  // namespace

NormalizedTarget normalize_target(const ConeSpec& cone,
                                  const TargetMeasure& target) {
  if (target.directions.size() != target.masses.size())
    fail(Errc::InvalidArgument, "directions and masses differ in length");

  NormalizedTarget nt;
  nt.total = 0.0;
  for (std::size_t i = 0; i < target.masses.size(); ++i) {
    const double mass = target.masses[i];
    if (mass < 0.0) fail(Errc::InvalidArgument, "negative atom mass");
    if (mass == 0.0) {
      nt.dropped.push_back(static_cast<int>(i));
      continue;
    }
    Vec u = normalized(target.directions[i]);
    if (!cone.normal_in_dual_omega(u))
      fail(Errc::DirectionOnBoundary,
           "target direction not strictly inside Omega_{C°}");
    nt.directions.push_back(std::move(u));
    nt.weights.push_back(mass);
    nt.total += mass;
  }
  if (nt.weights.empty())
    fail(Errc::ZeroMeasure, "a nonzero finite Borel measure is required");
  for (std::size_t i = 0; i < nt.directions.size(); ++i)
    for (std::size_t j = i + 1; j < nt.directions.size(); ++j)
      if (distance(nt.directions[i], nt.directions[j]) <= kGeomTol)
        fail(Errc::InvalidArgument,
             "duplicate target directions (merge their masses)");
  for (double& w : nt.weights) w /= nt.total;
  return nt;
}

ObjectiveValue objective_gradient(const ConeSpec& cone,
                                  const WeightDensity& density,
                                  const std::vector<Vec>& normals, const Vec& f,
                                  const Vec& weights, double quad_tol,
                                  int threads) {
  EvalData ev = evaluate_f(cone, density, normals, f, weights, quad_tol, threads);
  Vec grad_f(ev.grad_log.size());
  for (std::size_t i = 0; i < grad_f.size(); ++i)
    grad_f[i] = ev.grad_log[i] / f[i];
  return {ev.G, std::move(grad_f), ev.v_theta, std::move(ev.v_atoms),
          std::move(ev.s_atoms)};
}

SolveResult solve(const ConeSpec& cone, const WeightDensity& density,
                  const TargetMeasure& target, const SolveConfig& cfg) {
  if (cfg.max_iterations < 1 || !(cfg.residual_tol > 0.0) ||
      !(cfg.damping > 0.0) || cfg.damping > 1.0 || !(cfg.backtrack > 0.0) ||
      cfg.backtrack >= 1.0 || !(cfg.quadrature_tol > 0.0) ||
      !(cfg.f_floor > 0.0) || cfg.threads < 1)
    fail(Errc::InvalidArgument, "invalid solver settings");
  const NormalizedTarget nt = normalize_target(cone, target);
  const int m = static_cast<int>(nt.directions.size());
  const double nq = cone.n - density.exponent();

  SolveTrace trace;
  for (int d : nt.dropped)
    trace.warnings.push_back("dropped zero-mass atom " + std::to_string(d));

  // origin-distance corridor for V_Θ-normalized iterates, with margin
  // for the Monte-Carlo noise of the spherical factor in dimension 3
  const double delta = boundary_distance(cone, nt.directions);
  SphericalOptions sph{cfg.quadrature_tol, cfg.mc_samples, cfg.seed, 64};
  const double confining_mass =
      weighted_ball_measure(cone, density, 1.0 / std::sin(delta), sph).value;
  const double unit_ball = weighted_ball_measure(cone, density, 1.0, sph).value;
  trace.corridor_low = 0.95 * std::pow(1.0 / confining_mass, 1.0 / nq);
  trace.corridor_high = 1.05 * std::pow(1.0 / unit_ball, 1.0 / nq);

  // f is kept near the V_Θ = 1 normalization; the residual, objective, and
  // log-gradient are all invariant under f -> λf, so the evaluation of the
  // pre-rescale iterate remains valid for the rescaled one.
  Vec f(m, 1.0);
  EvalData ev = evaluate_f(cone, density, nt.directions, f, nt.weights,
                           cfg.quadrature_tol, cfg.threads);
  auto renormalize = [&](double v_theta, Vec& fv) {
    const double lam = std::pow(v_theta, -1.0 / nq);
    for (double& x : fv) x = std::max(x * lam, cfg.f_floor);
  };
  renormalize(ev.v_theta, f);

  double step_used = 0.0;
  for (int it = 1; it <= cfg.max_iterations; ++it) {
    double resid = 0.0;
    for (int i = 0; i < m; ++i)
      resid = std::max(resid, std::abs(ev.v_atoms[i] / ev.v_theta - nt.weights[i]));

    // b of the V_Θ-normalized iterate
    const double b_norm =
        ev.K.origin_distance() * std::pow(ev.v_theta, -1.0 / nq);
    trace.rows.push_back({it, ev.G, resid, b_norm, ev.v_theta, step_used});
    trace.final_residual = resid;

    if (b_norm < trace.corridor_low || b_norm > trace.corridor_high)
      fail(Errc::CorridorViolation,
           "b(K) = " + std::to_string(b_norm) + " outside (" +
               std::to_string(trace.corridor_low) + ", " +
               std::to_string(trace.corridor_high) + ")");
    {
      std::vector<int> all(m);
      for (int i = 0; i < m; ++i) all[i] = i;
      const ContainmentResult cont = containment_radius(ev.K, all);
      if (!cont.pass)
        fail(Errc::CorridorViolation, "facet containment radius violated");
    }

    if (resid <= cfg.residual_tol) {
      trace.status = SolveStatus::Converged;
      break;
    }
    if (it == cfg.max_iterations) {
      trace.status = SolveStatus::MaxIterations;
      break;
    }

    // Damped multiplicative ascent with backtracking. A step counts as
    // ascent only when the G increase exceeds the quadrature noise between
    // evaluations (~ m·tol/((n-q)V)); below that, acceptance requires a
    // strict decrease of the squared stationarity residual, a deterministic
    // quantity, with G allowed to move within the noise band. Genuine-ascent
    // steps strictly gain G and residual-descent steps strictly shrink the
    // residual, so no acceptance cycle can persist.
    auto resid2_of = [&](const EvalData& e) {
      double acc = 0.0;
      for (int i = 0; i < m; ++i) {
        const double d = e.v_atoms[i] / e.v_theta - nt.weights[i];
        acc += d * d;
      }
      return acc;
    };
    const double resid2 = resid2_of(ev);
    const double g_noise =
        std::max(1e-12, 4.0 * m * cfg.quadrature_tol /
                            (nq * std::min(1.0, ev.v_theta)));
    double step = cfg.damping;
    bool accepted = false;
    for (int bt = 0; bt < 60; ++bt) {
      Vec f_trial(m);
      for (int i = 0; i < m; ++i)
        f_trial[i] =
            std::max(f[i] * std::exp(step * ev.grad_log[i]), cfg.f_floor);
      EvalData trial = evaluate_f(cone, density, nt.directions, f_trial,
                                  nt.weights, cfg.quadrature_tol, cfg.threads);
      const bool genuine_ascent = trial.G > ev.G + g_noise;
      const bool residual_descent =
          resid2_of(trial) < resid2 && trial.G > ev.G - g_noise;
      if (genuine_ascent || residual_descent) {
        f = std::move(f_trial);
        ev = std::move(trial);
        step_used = step;
        accepted = true;
        break;
      }
      step *= cfg.backtrack;
    }
    if (!accepted) {
      trace.status = SolveStatus::LineSearchStalled;
      break;
    }

    if (cfg.fd_check && it % 10 == 0) {
      // variational-derivative audit at the accepted iterate: dV_Θ/df_i
      // vs S^Θ_i by central differences (f and ev share a scale here)
      for (int i = 0; i < m; ++i) {
        const double h = 1e-5 * std::max(1.0, f[i]);
        Vec fp = f, fm = f;
        fp[i] += h;
        fm[i] -= h;
        const double vp = evaluate_f(cone, density, nt.directions, fp,
                                     nt.weights, cfg.quadrature_tol, cfg.threads)
                              .v_theta;
        const double vm = evaluate_f(cone, density, nt.directions, fm,
                                     nt.weights, cfg.quadrature_tol, cfg.threads)
                              .v_theta;
        const double fd = (vp - vm) / (2.0 * h);
        const double ref = ev.s_atoms[i];
        if (std::abs(fd - ref) > 1e-3 * std::max(1.0, std::abs(ref)))
          trace.warnings.push_back("gradient FD mismatch at iterate " +
                                   std::to_string(it) + ", atom " +
                                   std::to_string(i));
      }
    }

    renormalize(ev.v_theta, f);
  }

  for (int i = 0; i < m; ++i)
    if (!ev.K.constraint_active(i))
      trace.warnings.push_back("atom " + std::to_string(i) +
                               " inactive at termination");

  // dilate so that V^Θ matches the unnormalized target masses
  const double lam = std::pow(nt.total, 1.0 / nq);
  Vec f_final = f;
  for (double& x : f_final) x *= lam;
  PseudoCone K_final(cone, nt.directions, f_final);

  MeasureOptions mopts;
  mopts.tol = cfg.quadrature_tol;
  mopts.mc_samples = cfg.mc_samples;
  mopts.seed = cfg.seed;
  mopts.threads = cfg.threads;
  MeasureReport report = measure_report(K_final, density, mopts);

  return {std::move(K_final), std::move(f_final), std::move(trace),
          std::move(report), lam};
}

double polytope_hausdorff(const std::vector<Vec>& P, const std::vector<Vec>& Q) {
  auto directed = [](const std::vector<Vec>& A, const std::vector<Vec>& B) {
    double worst = 0.0;
    for (const auto& v : A) {
      std::vector<Vec> shifted;
      shifted.reserve(B.size());
      for (const auto& q : B) shifted.push_back(sub(q, v));
      worst = std::max(worst, norm(min_norm_point(shifted)));
    }
    return worst;
  };
  return std::max(directed(P, Q), directed(Q, P));
}

SweepReport convergence_sweep(const ConeSpec& cone, const WeightDensity& density,
                              const TargetMeasure& target,
                              const std::vector<std::vector<int>>& nest,
                              const SolveConfig& cfg, double stabilization_tol) {
  if (nest.empty()) fail(Errc::InvalidArgument, "empty nest");
  const int total_atoms = static_cast<int>(target.directions.size());
  for (std::size_t j = 0; j < nest.size(); ++j) {
    if (nest[j].empty()) fail(Errc::InvalidArgument, "empty nest level");
    for (int i : nest[j])
      if (i < 0 || i >= total_atoms)
        fail(Errc::InvalidArgument, "nest index out of range");
    if (j > 0)
      for (int i : nest[j - 1])
        if (std::find(nest[j].begin(), nest[j].end(), i) == nest[j].end())
          fail(Errc::InvalidArgument, "nest levels are not nested");
  }
  double mass1 = 0.0;
  for (int i : nest[0]) mass1 += target.masses[i];
  if (!(mass1 > 0.0)) fail(Errc::InvalidArgument, "first nest level carries no mass");

  // test panel of bounded continuous functions on Omega_{C°}
  std::vector<std::function<double(const Vec&)>> panel;
  panel.emplace_back([](const Vec&) { return 1.0; });
  panel.emplace_back([&cone](const Vec& u) { return 1.0 + dot(u, cone.axis); });

  SweepReport rep;
  rep.stabilization_tol = stabilization_tol;
  std::vector<SolveResult> solutions;
  for (const auto& level : nest) {
    TargetMeasure restricted;
    for (int i : level) {
      restricted.directions.push_back(target.directions[i]);
      restricted.masses.push_back(target.masses[i]);
    }
    solutions.push_back(solve(cone, density, restricted, cfg));

    SweepLevel lv;
    lv.atoms = level;
    lv.mass = 0.0;
    for (int i : level) lv.mass += target.masses[i];
    lv.status = solutions.back().trace.status;
    rep.levels.push_back(std::move(lv));
  }

  double t_common = 0.0;
  for (const auto& sol : solutions)
    t_common = std::max(t_common, sol.K.truncation().height);
  rep.common_height = t_common;

  std::vector<std::vector<Vec>> trunc_vertices;
  for (const auto& sol : solutions)
    trunc_vertices.push_back(truncate(sol.K, t_common).vertices);

  for (std::size_t j = 0; j < solutions.size(); ++j) {
    SweepLevel& lv = rep.levels[j];
    for (int i : nest[0]) {
      const Vec u = normalized(target.directions[i]);
      lv.support_on_common.push_back(solutions[j].K.support_value(u));
    }
    for (const auto& fn : panel) {
      double acc = 0.0;
      const MeasureReport& mr = solutions[j].report;
      for (const auto& atom : mr.atoms) acc += fn(atom.u) * atom.cone_volume_theta;
      lv.panel_integrals.push_back(acc);
    }
    lv.hausdorff_to_previous =
        j == 0 ? 0.0
               : polytope_hausdorff(trunc_vertices[j - 1], trunc_vertices[j]);
  }

  rep.all_converged = true;
  for (const auto& lv : rep.levels)
    rep.all_converged &= lv.status == SolveStatus::Converged;
  rep.stabilized =
      rep.all_converged &&
      (rep.levels.size() < 2 ||
       rep.levels.back().hausdorff_to_previous <= stabilization_tol);
  return rep;
}

}  // namespace pcone
