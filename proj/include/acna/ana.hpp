#ifndef ACNA_ANA_HPP
#define ACNA_ANA_HPP

#include "acna/constraints.hpp"
#include "acna/game.hpp"

#include <optional>
#include <vector>

namespace acna {

struct AnaSettings {
  double step_size = 1e-3;
  long max_steps = 2'000'000;
  double stationarity_tol = 1e-6;
  int stationarity_window = 10;
  double feasibility_tol = 1e-10;
  double nu = 0.0;
  /// Divergence guard: a step longer than this norm is clipped.
  double step_clip = 0.1;
  int trace_stride = 100;
};

struct AnaState {
  Vector x;
  double zeta = 0.0;
  double time = 0.0;
};

struct TraceSample {
  double time = 0.0;
  Vector x;
  double objective = 0.0;
  double box_violation = 0.0;
  double equality_norm = 0.0;
  double zeta = 0.0;
  double xdot_norm = 0.0;
};

struct AnaTrace {
  std::vector<TraceSample> samples;
  std::optional<double> entry_time;
};

struct AnaRhs {
  Vector x_dot;
  double zeta_dot = 0.0;
};

/// Right-hand side of the flow:
///   x_dot = -gate(G(x), nu) * grad Q~(x) - zeta * (kappa + zeta * eta)
/// with the module subgradient selections kappa, eta, and
/// zeta_dot = sign(epsilon) with epsilon treated as zero below feas_tol.
AnaRhs rhs(const GameTensor& game, const ConstraintGeometry& geom,
           const AnaState& state, double nu, double feas_tol = 0.0);

struct AnaResult {
  Vector x;
  AnaTrace trace;
  bool converged = false;
  bool fault = false;
  long steps = 0;
  double final_zeta = 0.0;
};

/// One forward-Euler step. When the state is within reach of the feasible
/// set, the penalty displacement is realized as the exact landing on it
/// (an implicit discretization of the subgradient terms); far away the
/// explicit formula applies, clipped by the divergence guard. Returns the
/// effective step velocity norm through `xdot_norm`.
bool step(const GameTensor& game, const ConstraintGeometry& geom,
          AnaState& state, const AnaSettings& settings, EvalWorkspace& ws,
          double* xdot_norm);

/// Integrates from x0 until the effective velocity stays below
/// stationarity_tol for a full window at a feasible point, or max_steps.
AnaResult run_to_critical(const GameTensor& game,
                          const ConstraintGeometry& geom, const Vector& x0,
                          const AnaSettings& settings);

}  // namespace acna

#endif  // ACNA_ANA_HPP
