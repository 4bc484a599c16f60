#include "pcone/commands.hpp"

#include <filesystem>
#include <iostream>

#include "pcone/io.hpp"

namespace pcone {

namespace {

void apply_overrides(ProblemConfig& cfg, const CommandOptions& opts) {
  if (opts.seed) {
    cfg.seed = *opts.seed;
    cfg.solver.seed = *opts.seed;
  }
  if (opts.threads) {
    if (*opts.threads < 1) fail(Errc::InvalidArgument, "threads must be >= 1");
    cfg.solver.threads = *opts.threads;
  }
}

std::string out_path(const CommandOptions& opts, const std::string& name) {
  std::filesystem::create_directories(opts.out_dir);
  return (std::filesystem::path(opts.out_dir) / name).string();
}

int guard(const std::function<int()>& body) {
  try {
    return body();
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    return e.code() == Errc::CorridorViolation ? 3 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

PseudoCone build_from_config(const ProblemConfig& cfg, const ConeSpec& cone) {
  if (!cfg.support_magnitudes)
    fail(Errc::InvalidArgument, "config requires support_magnitudes");
  if (cfg.support_magnitudes->size() != cfg.target.directions.size())
    fail(Errc::InvalidArgument,
         "support_magnitudes and target.directions differ in length");
  return PseudoCone(cone, cfg.target.directions, *cfg.support_magnitudes);
}

}  // namespace

int cmd_solve(const std::string& config_path, const CommandOptions& opts) {
  return guard([&]() -> int {
    ProblemConfig cfg = load_config(config_path);
    apply_overrides(cfg, opts);
    const ConeSpec cone = make_cone(cfg);
    const WeightDensity density = make_density(cfg, cone);
    const NormalizedTarget nt = normalize_target(cone, cfg.target);

    SolveResult res = solve(cone, density, cfg.target, cfg.solver);
    write_text_file(out_path(opts, "solve_report.json"),
                    solve_report_json(cfg, res, nt));
    write_text_file(out_path(opts, "solve_trace.csv"), trace_csv(res.trace));
    if (cone.n == 3)
      write_text_file(out_path(opts, "mesh.off"),
                      off_mesh(res.K.truncation()));
    return res.trace.status == SolveStatus::Converged ? 0 : 2;
  });
}

int cmd_evaluate(const std::string& config_path, const CommandOptions& opts) {
  return guard([&]() -> int {
    ProblemConfig cfg = load_config(config_path);
    apply_overrides(cfg, opts);
    const ConeSpec cone = make_cone(cfg);
    const WeightDensity density = make_density(cfg, cone);
    const PseudoCone K = build_from_config(cfg, cone);

    MeasureOptions mopts;
    mopts.tol = cfg.quad_tol;
    mopts.mc_samples = cfg.mc_samples;
    mopts.seed = cfg.seed;
    mopts.with_radial = opts.route_radial;
    mopts.with_mc = opts.route_mc;
    mopts.threads = cfg.solver.threads;
    const MeasureReport report = measure_report(K, density, mopts);
    write_text_file(out_path(opts, "evaluate_report.json"),
                    evaluate_report_json(cfg, K, report));
    return 0;
  });
}

int cmd_bounds(const std::string& config_path, const CommandOptions& opts) {
  return guard([&]() -> int {
    ProblemConfig cfg = load_config(config_path);
    apply_overrides(cfg, opts);
    const ConeSpec cone = make_cone(cfg);
    const PseudoCone K = build_from_config(cfg, cone);

    std::vector<int> omega = !opts.omega.empty() ? opts.omega : cfg.omega;
    if (opts.omega_given && opts.omega.empty())
      fail(Errc::EmptyOmega, "an explicit omega must be nonempty");
    if (omega.empty())
      for (int i = 0; i < K.num_constraints(); ++i) omega.push_back(i);

    const BoundAudit audit = thm11_audit(K, omega);
    write_text_file(out_path(opts, "bounds_report.json"),
                    bounds_report_json(cfg, audit, omega));

    if (opts.sweep) {
      std::vector<BoundAudit> audits;
      for (int i = 0; i < K.num_constraints(); ++i)
        audits.push_back(thm11_audit(K, {i}));
      write_text_file(out_path(opts, "bounds_sweep.csv"),
                      bounds_sweep_csv(audits));
    }
    return audit.pass ? 0 : 1;
  });
}

int cmd_convergence(const std::string& config_path, const CommandOptions& opts) {
  return guard([&]() -> int {
    ProblemConfig cfg = load_config(config_path);
    apply_overrides(cfg, opts);
    const ConeSpec cone = make_cone(cfg);
    const WeightDensity density = make_density(cfg, cone);

    const std::vector<std::vector<int>>& nest =
        !opts.nest.empty() ? opts.nest : cfg.nest;
    if (nest.empty())
      fail(Errc::InvalidArgument, "convergence requires a nest specification");

    const SweepReport rep =
        convergence_sweep(cone, density, cfg.target, nest, cfg.solver);
    write_text_file(out_path(opts, "convergence_levels.csv"),
                    sweep_levels_csv(rep));
    write_text_file(out_path(opts, "convergence_report.json"),
                    sweep_report_json(cfg, rep));
    return rep.all_converged ? 0 : 2;
  });
}

}  // namespace pcone
