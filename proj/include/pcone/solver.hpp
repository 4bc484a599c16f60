#pragma once

// Solves the weighted cone-volume Minkowski problem for atomic targets by
// damped multiplicative ascent on the scale-invariant log-objective
// G(f) = Σ φ̂_i log f_i - log V_Θ([f]) / (n-q), whose stationarity condition
// is the measure equation itself.

#include <cstdint>
#include <string>
#include <vector>

#include "pcone/geometry.hpp"
#include "pcone/measures.hpp"
#include "pcone/quadrature.hpp"

namespace pcone {

struct TargetMeasure {
  std::vector<Vec> directions;
  Vec masses;
};

struct SolveConfig {
  int max_iterations = 2000;
  double residual_tol = 1e-8;
  double damping = 0.5;        // γ in (0,1]
  double backtrack = 0.5;
  double quadrature_tol = 1e-9;
  double f_floor = 1e-12;
  std::uint64_t seed = 1;
  long mc_samples = 1'000'000;
  int threads = 1;
  bool fd_check = false;       // gradient/finite-difference audit every 10th iterate
};

struct NormalizedTarget {
  std::vector<Vec> directions;
  Vec weights;                 // φ̂, sums to 1
  double total;                // φ(Ω_{C°})
  std::vector<int> dropped;    // indices of zero-mass atoms removed
};

// Validates directions, drops zero-mass atoms, normalizes to total mass 1.
NormalizedTarget normalize_target(const ConeSpec& cone,
                                  const TargetMeasure& target);

struct ObjectiveValue {
  double G;
  Vec gradient;      // ∂G/∂f_i = φ̂_i/f_i - S^Θ_i / ((n-q) V_Θ)
  double v_theta;
  Vec v_theta_atoms;
  Vec s_theta_atoms;
};

ObjectiveValue objective_gradient(const ConeSpec& cone,
                                  const WeightDensity& density,
                                  const std::vector<Vec>& normals, const Vec& f,
                                  const Vec& weights, double quad_tol,
                                  int threads = 1);

enum class SolveStatus { Converged, MaxIterations, LineSearchStalled };

struct IterationRow {
  int iteration;
  double objective;
  double residual;
  double b;
  double v_theta;
  double step;
};

struct SolveTrace {
  std::vector<IterationRow> rows;
  SolveStatus status = SolveStatus::Converged;
  double corridor_low = 0.0;   // lower bound on b for V_Θ = 1 iterates
  double corridor_high = 0.0;  // upper barrier from the ball-mass argument
  double final_residual = 0.0;
  std::vector<std::string> warnings;
};

struct SolveResult {
  PseudoCone K;          // dilated so that V^Θ_K({u_i}) = φ_i
  Vec support_magnitudes;
  SolveTrace trace;
  MeasureReport report;  // measures of the returned K
  double scale;          // applied dilation φ_total^{1/(n-q)}
};

SolveResult solve(const ConeSpec& cone, const WeightDensity& density,
                  const TargetMeasure& target, const SolveConfig& cfg = {});

struct SweepLevel {
  std::vector<int> atoms;              // indices into the full target
  double mass = 0.0;                   // φ(ω_j)
  SolveStatus status = SolveStatus::Converged;
  Vec support_on_common;               // h̄ on the atoms of the first level
  double hausdorff_to_previous = 0.0;  // truncations at the common height
  Vec panel_integrals;                 // ∫ f_k dV^Θ_{K_j} for the test panel
};

struct SweepReport {
  std::vector<SweepLevel> levels;
  double common_height;
  bool all_converged;
  bool stabilized;  // all levels converged and the last gap under tolerance
  double stabilization_tol;
};

// Solves restricted targets over a nested family of atom subsets and
// reports the stabilization of the solutions.
SweepReport convergence_sweep(const ConeSpec& cone, const WeightDensity& density,
                              const TargetMeasure& target,
                              const std::vector<std::vector<int>>& nest,
                              const SolveConfig& cfg = {},
                              double stabilization_tol = 1e-4);

// Directed-Hausdorff helper shared with tests: max over vertices of P of the
// distance to conv(Q vertices), symmetrized.
double polytope_hausdorff(const std::vector<Vec>& P, const std::vector<Vec>& Q);

}  // namespace pcone
