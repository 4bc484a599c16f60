#include "pcone/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace pcone {

using ordered_json = nlohmann::ordered_json;

double round12(double v) {
  if (!std::isfinite(v)) return v;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::InvalidArgument, "cannot write " + path);
  out << content;
}

namespace {

ordered_json vec_json(const Vec& v) {
  ordered_json a = ordered_json::array();
  for (double x : v) a.push_back(round12(x));
  return a;
}

ordered_json vecs_json(const std::vector<Vec>& vs) {
  ordered_json a = ordered_json::array();
  for (const auto& v : vs) a.push_back(vec_json(v));
  return a;
}

Vec parse_vec(const ordered_json& j) {
  if (!j.is_array() || j.empty())
    fail(Errc::InvalidArgument, "expected a nonempty numeric array");
  Vec v;
  for (const auto& x : j) {
    if (!x.is_number()) fail(Errc::InvalidArgument, "expected a number");
    v.push_back(x.get<double>());
  }
  return v;
}

ordered_json input_echo(const ProblemConfig& cfg) {
  ordered_json in;
  in["cone"]["rays"] = vecs_json(cfg.rays);
  if (cfg.axis) in["cone"]["axis"] = vec_json(*cfg.axis);
  in["density"]["q"] = round12(cfg.q);
  in["density"]["psi"] = cfg.psi;
  if (cfg.psi == "axis_power") in["density"]["power"] = round12(cfg.psi_power);
  in["target"]["directions"] = vecs_json(cfg.target.directions);
  in["target"]["masses"] = vec_json(cfg.target.masses);
  if (cfg.support_magnitudes)
    in["support_magnitudes"] = vec_json(*cfg.support_magnitudes);
  in["seed"] = cfg.seed;
  return in;
}

ordered_json atoms_json(const MeasureReport& rep) {
  ordered_json arr = ordered_json::array();
  for (const auto& a : rep.atoms) {
    ordered_json ja;
    ja["index"] = a.index;
    ja["u"] = vec_json(a.u);
    ja["hbar"] = round12(a.hbar);
    ja["active"] = a.active;
    ja["surface_theta"] = round12(a.surface_theta);
    ja["surface_theta_err"] = round12(a.surface_theta_err);
    ja["cone_volume_theta"] = round12(a.cone_volume_theta);
    ja["cone_volume_theta_err"] = round12(a.cone_volume_theta_err);
    ja["surface"] = round12(a.surface);
    ja["cone_volume"] = round12(a.cone_volume);
    arr.push_back(std::move(ja));
  }
  return arr;
}

ordered_json totals_json(const MeasureReport& rep) {
  ordered_json t;
  t["covolume_theta"] = round12(rep.covolume_theta);
  t["covolume_theta_err"] = round12(rep.covolume_theta_err);
  t["covolume_unweighted"] = round12(rep.covolume_unweighted);
  t["surface_theta"] = round12(rep.surface_theta_total);
  return t;
}

ordered_json routes_json(const MeasureReport& rep) {
  ordered_json r;
  r["facet"]["v_theta"] = round12(rep.covolume_theta);
  r["facet"]["error"] = round12(rep.covolume_theta_err);
  if (rep.radial_route.computed) {
    r["radial"]["v_theta"] = round12(rep.radial_route.value);
    r["radial"]["error"] = round12(rep.radial_route.error);
    r["radial"]["delta_vs_facet"] =
        round12(rep.radial_route.value - rep.covolume_theta);
  }
  if (rep.mc_route.computed) {
    r["mc"]["v_theta"] = round12(rep.mc_route.value);
    r["mc"]["standard_error"] = round12(rep.mc_route.error);
    r["mc"]["delta_vs_facet"] = round12(rep.mc_route.value - rep.covolume_theta);
  }
  return r;
}

const char* status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::Converged: return "converged";
    case SolveStatus::MaxIterations: return "max_iterations";
    case SolveStatus::LineSearchStalled: return "line_search_stalled";
  }
  return "unknown";
}

}  // namespace

ProblemConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::InvalidArgument, "cannot read config " + path);
  ordered_json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    fail(Errc::InvalidArgument, std::string("malformed JSON: ") + e.what());
  }

  ProblemConfig cfg;
  cfg.schema_version = j.value("schema_version", 1);
  if (cfg.schema_version != 1)
    fail(Errc::InvalidArgument, "unsupported schema_version");

  if (!j.contains("cone") || !j["cone"].contains("rays"))
    fail(Errc::InvalidArgument, "config requires cone.rays");
  for (const auto& r : j["cone"]["rays"]) cfg.rays.push_back(parse_vec(r));
  if (j["cone"].contains("axis")) cfg.axis = parse_vec(j["cone"]["axis"]);

  if (!j.contains("density") || !j["density"].contains("q"))
    fail(Errc::InvalidArgument, "config requires density.q");
  cfg.q = j["density"]["q"].get<double>();
  cfg.psi = j["density"].value("psi", std::string("constant"));
  if (cfg.psi != "constant" && cfg.psi != "axis_power")
    fail(Errc::InvalidArgument, "psi must be 'constant' or 'axis_power'");
  cfg.psi_power = j["density"].value("power", 0.0);

  if (j.contains("target")) {
    const auto& t = j["target"];
    if (!t.contains("directions") || !t.contains("masses"))
      fail(Errc::InvalidArgument, "target requires directions and masses");
    for (const auto& d : t["directions"]) {
      Vec u = parse_vec(d);
      if (std::abs(norm(u) - 1.0) > 1e-9)
        fail(Errc::InvalidArgument,
             "target directions must be unit vectors (tolerance 1e-9)");
      cfg.target.directions.push_back(normalized(u));
    }
    cfg.target.masses = parse_vec(t["masses"]);
  }

  if (j.contains("support_magnitudes"))
    cfg.support_magnitudes = parse_vec(j["support_magnitudes"]);

  if (j.contains("solver")) {
    const auto& s = j["solver"];
    cfg.solver.max_iterations = s.value("max_iterations", cfg.solver.max_iterations);
    cfg.solver.residual_tol = s.value("residual_tol", cfg.solver.residual_tol);
    cfg.solver.damping = s.value("damping", cfg.solver.damping);
    cfg.solver.backtrack = s.value("backtrack", cfg.solver.backtrack);
    cfg.solver.f_floor = s.value("f_floor", cfg.solver.f_floor);
    if (cfg.solver.max_iterations < 1 || cfg.solver.residual_tol <= 0.0 ||
        cfg.solver.damping <= 0.0 || cfg.solver.damping > 1.0 ||
        cfg.solver.backtrack <= 0.0 || cfg.solver.backtrack >= 1.0 ||
        cfg.solver.f_floor <= 0.0)
      fail(Errc::InvalidArgument, "invalid solver settings");
  }
  if (j.contains("quadrature")) {
    cfg.quad_tol = j["quadrature"].value("tol", cfg.quad_tol);
    cfg.mc_samples = j["quadrature"].value("mc_samples", cfg.mc_samples);
    if (cfg.quad_tol <= 0.0 || cfg.mc_samples < 1)
      fail(Errc::InvalidArgument, "invalid quadrature settings");
  }
  cfg.seed = j.value("seed", std::uint64_t{1});
  if (j.contains("bounds") && j["bounds"].contains("omega"))
    for (const auto& i : j["bounds"]["omega"]) cfg.omega.push_back(i.get<int>());
  if (j.contains("convergence") && j["convergence"].contains("nest"))
    for (const auto& lvl : j["convergence"]["nest"]) {
      std::vector<int> level;
      for (const auto& i : lvl) level.push_back(i.get<int>());
      cfg.nest.push_back(std::move(level));
    }

  cfg.solver.quadrature_tol = cfg.quad_tol;
  cfg.solver.mc_samples = cfg.mc_samples;
  cfg.solver.seed = cfg.seed;
  return cfg;
}

ConeSpec make_cone(const ProblemConfig& cfg) {
  return cfg.axis ? build_cone(cfg.rays, *cfg.axis) : build_cone(cfg.rays);
}

WeightDensity make_density(const ProblemConfig& cfg, const ConeSpec& cone) {
  if (cfg.psi == "axis_power")
    return WeightDensity(cone.n, cfg.q, cfg.psi_power, cone.axis);
  return WeightDensity(cone.n, cfg.q);
}

std::string solve_report_json(const ProblemConfig& cfg, const SolveResult& res,
                              const NormalizedTarget& nt) {
  ordered_json j;
  j["schema_version"] = 1;
  j["command"] = "solve";
  j["input"] = input_echo(cfg);
  j["dropped_atoms"] = nt.dropped;
  j["status"] = status_name(res.trace.status);
  j["iterations"] = res.trace.rows.empty() ? 0 : res.trace.rows.back().iteration;
  j["residual"] = round12(res.trace.final_residual);
  j["scale"] = round12(res.scale);
  j["corridor"]["low"] = round12(res.trace.corridor_low);
  j["corridor"]["high"] = round12(res.trace.corridor_high);

  ordered_json atoms = atoms_json(res.report);
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    atoms[i]["target_mass"] = round12(nt.weights[i] * nt.total);
    atoms[i]["residual"] = round12(
        (res.report.atoms[i].cone_volume_theta - nt.weights[i] * nt.total) /
        nt.total);
  }
  j["atoms"] = std::move(atoms);
  j["totals"] = totals_json(res.report);
  j["warnings"] = res.trace.warnings;
  return j.dump(2) + "\n";
}

std::string evaluate_report_json(const ProblemConfig& cfg, const PseudoCone& K,
                                 const MeasureReport& report) {
  ordered_json j;
  j["schema_version"] = 1;
  j["command"] = "evaluate";
  j["input"] = input_echo(cfg);
  j["b"] = round12(K.origin_distance());
  j["min_height"] = round12(K.min_height());
  j["atoms"] = atoms_json(report);
  j["totals"] = totals_json(report);
  j["routes"] = routes_json(report);
  return j.dump(2) + "\n";
}

std::string bounds_report_json(const ProblemConfig& cfg, const BoundAudit& audit,
                               const std::vector<int>& omega) {
  ordered_json j;
  j["schema_version"] = 1;
  j["command"] = "bounds";
  j["input"] = input_echo(cfg);
  j["omega"] = omega;
  j["delta"] = round12(audit.delta);
  j["s"] = round12(audit.s);
  j["t_omega"] = round12(audit.t_omega);
  j["constants"]["c1"] = round12(audit.c1);
  j["constants"]["c2"] = round12(audit.c2);
  j["constants"]["c3"] = round12(audit.c3);
  j["constants"]["c4"] = round12(audit.c4);
  j["constants"]["c5"] = round12(audit.c5);
  j["constants"]["c6"] = round12(audit.c6);
  j["bound"] = round12(audit.bound);
  j["measured_cone_volume"] = round12(audit.measured);
  j["slack"] = round12(audit.bound - audit.measured);
  j["pass"] = audit.pass;
  return j.dump(2) + "\n";
}

std::string bounds_sweep_csv(const std::vector<BoundAudit>& audits) {
  std::ostringstream out;
  out << "atom,delta,t_omega,measured,bound,pass\n";
  for (std::size_t i = 0; i < audits.size(); ++i) {
    const BoundAudit& a = audits[i];
    out << i << ',' << fmt12(a.delta) << ',' << fmt12(a.t_omega) << ','
        << fmt12(a.measured) << ',' << fmt12(a.bound) << ','
        << (a.pass ? 1 : 0) << '\n';
  }
  return out.str();
}

std::string trace_csv(const SolveTrace& trace) {
  std::ostringstream out;
  out << "iteration,objective,residual,b,v_theta,step\n";
  for (const auto& r : trace.rows)
    out << r.iteration << ',' << fmt12(r.objective) << ',' << fmt12(r.residual)
        << ',' << fmt12(r.b) << ',' << fmt12(r.v_theta) << ',' << fmt12(r.step)
        << '\n';
  return out.str();
}

std::string sweep_levels_csv(const SweepReport& rep) {
  std::ostringstream out;
  out << "level,atoms,mass,converged,hausdorff_to_previous";
  if (!rep.levels.empty()) {
    for (std::size_t k = 0; k < rep.levels[0].support_on_common.size(); ++k)
      out << ",hbar_common_" << k;
    for (std::size_t k = 0; k < rep.levels[0].panel_integrals.size(); ++k)
      out << ",panel_" << k;
  }
  out << '\n';
  for (std::size_t j = 0; j < rep.levels.size(); ++j) {
    const SweepLevel& lv = rep.levels[j];
    out << j << ',' << lv.atoms.size() << ',' << fmt12(lv.mass) << ','
        << (lv.status == SolveStatus::Converged ? 1 : 0) << ','
        << fmt12(lv.hausdorff_to_previous);
    for (double h : lv.support_on_common) out << ',' << fmt12(h);
    for (double p : lv.panel_integrals) out << ',' << fmt12(p);
    out << '\n';
  }
  return out.str();
}

std::string sweep_report_json(const ProblemConfig& cfg, const SweepReport& rep) {
  ordered_json j;
  j["schema_version"] = 1;
  j["command"] = "convergence";
  j["input"] = input_echo(cfg);
  j["common_height"] = round12(rep.common_height);
  j["stabilization_tol"] = round12(rep.stabilization_tol);
  j["all_converged"] = rep.all_converged;
  j["stabilized"] = rep.stabilized;
  ordered_json lvls = ordered_json::array();
  for (const auto& lv : rep.levels) {
    ordered_json jl;
    jl["atoms"] = lv.atoms;
    jl["mass"] = round12(lv.mass);
    jl["converged"] = lv.status == SolveStatus::Converged;
    jl["hausdorff_to_previous"] = round12(lv.hausdorff_to_previous);
    jl["hbar_on_common"] = vec_json(lv.support_on_common);
    jl["panel_integrals"] = vec_json(lv.panel_integrals);
    lvls.push_back(std::move(jl));
  }
  j["levels"] = std::move(lvls);
  return j.dump(2) + "\n";
}

std::string off_mesh(const TruncationPolytope& poly) {
  std::ostringstream out;
  out << "OFF\n" << poly.vertices.size() << ' ' << poly.facets.size() << " 0\n";
  for (const auto& v : poly.vertices) {
    out << fmt12(v[0]);
    for (std::size_t c = 1; c < v.size(); ++c) out << ' ' << fmt12(v[c]);
    out << '\n';
  }
  for (const auto& f : poly.facets) {
    std::vector<Vec> pts;
    for (int id : f.vertex_ids) pts.push_back(poly.vertices[id]);
    const std::vector<int> order = order_polygon_vertices(pts);
    out << f.vertex_ids.size();
    for (int k : order) out << ' ' << f.vertex_ids[k];
    out << '\n';
  }
  return out.str();
}

}  // namespace pcone
