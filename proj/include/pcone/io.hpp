#pragma once

// JSON problem configs, report serialization at 12 significant digits,
// CSV traces, and OFF mesh export.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pcone/bounds.hpp"
#include "pcone/measures.hpp"
#include "pcone/solver.hpp"

namespace pcone {

struct ProblemConfig {
  int schema_version = 1;
  std::vector<Vec> rays;
  std::optional<Vec> axis;
  double q = 0.0;
  std::string psi = "constant";
  double psi_power = 0.0;
  TargetMeasure target;
  std::optional<Vec> support_magnitudes;  // explicit h̄ for evaluate
  SolveConfig solver;
  double quad_tol = kQuadTol;
  long mc_samples = 1'000'000;
  std::uint64_t seed = 1;
  std::vector<int> omega;                  // bounds command
  std::vector<std::vector<int>> nest;      // convergence command
};

ProblemConfig load_config(const std::string& path);

ConeSpec make_cone(const ProblemConfig& cfg);
WeightDensity make_density(const ProblemConfig& cfg, const ConeSpec& cone);

// rounds to 12 significant digits (report serialization contract)
double round12(double v);
std::string fmt12(double v);

void write_text_file(const std::string& path, const std::string& content);

std::string solve_report_json(const ProblemConfig& cfg, const SolveResult& res,
                              const NormalizedTarget& nt);
std::string evaluate_report_json(const ProblemConfig& cfg,
                                 const PseudoCone& K,
                                 const MeasureReport& report);
std::string bounds_report_json(const ProblemConfig& cfg, const BoundAudit& audit,
                               const std::vector<int>& omega);
std::string bounds_sweep_csv(const std::vector<BoundAudit>& audits);
std::string trace_csv(const SolveTrace& trace);
std::string sweep_levels_csv(const SweepReport& rep);
std::string sweep_report_json(const ProblemConfig& cfg, const SweepReport& rep);
std::string off_mesh(const TruncationPolytope& poly);

}  // namespace pcone
