#include "acna/ana.hpp"

#include <cmath>
#include <stdexcept>

namespace acna {

AnaRhs rhs(const GameTensor& game, const ConstraintGeometry& geom,
           const AnaState& state, double nu, double feas_tol) {
  if (!state.x.allFinite()) {
    throw std::invalid_argument("rhs: non-finite state");
  }
  const double g_value = box_violation(state.x);
  const Vector kappa = box_subgradient(state.x);
  const Vector eta = equality_subgradient(geom, state.x, feas_tol);
  const Vector grad = objective_gradient(game, state.x);

  AnaRhs out;
  out.x_dot = -gate(g_value, nu) * grad - state.zeta * (kappa + state.zeta * eta);
  const double eps = g_value + equality_residual(geom, state.x).second;
  out.zeta_dot = eps > feas_tol ? zeta_rate(eps) : 0.0;
  return out;
}

bool step(const GameTensor& game, const ConstraintGeometry& geom,
          AnaState& state, const AnaSettings& settings, EvalWorkspace& ws,
          double* xdot_norm) {
  const double h = settings.step_size;
  const double zeta = state.zeta;
  const double g_value = box_violation(state.x);
  const auto [hres, eq_norm] = equality_residual(geom, state.x);
  const double eps = g_value + eq_norm;

  const double gate_value = gate(g_value, settings.nu);
  Vector free_velocity;
  if (gate_value != 0.0) {
    free_velocity = -gate_value * objective_gradient(game, state.x, ws);
  } else {
    free_velocity = Vector::Zero(state.x.size());
  }

  Vector x_next;
  bool took_implicit = false;
  if (zeta > 0.0) {
    // Implicit handling of the penalty subgradients: if the penalty force
    // available over one step can place the tentative point on the feasible
    // set, land there exactly. This is a valid selection from the
    // subdifferentials and is what keeps the post-entry violations at
    // round-off level instead of chattering at O(h*zeta^2).
    Vector tentative = state.x + h * free_velocity;
    Vector projected = project_feasible(geom, tentative);
    const double need = (projected - tentative).norm();
    const int m = geom.total_strategies();
    double max_block = 0.0;
    for (int c : geom.strategy_counts()) max_block = std::max(max_block, double(c));
    const double budget =
        h * zeta * (std::sqrt(static_cast<double>(m)) + zeta * std::sqrt(max_block));
    if (need <= budget) {
      x_next = projected;
      took_implicit = true;
    }
  }
  if (!took_implicit) {
    const Vector kappa = box_subgradient(state.x);
    const Vector eta = equality_subgradient(geom, state.x, settings.feasibility_tol);
    Vector displacement = h * (free_velocity - zeta * (kappa + zeta * eta));
    const double norm = displacement.norm();
    if (norm > settings.step_clip) {
      displacement *= settings.step_clip / norm;
    }
    x_next = state.x + displacement;
  }

  const double zeta_dot = eps > settings.feasibility_tol ? zeta_rate(eps) : 0.0;
  if (xdot_norm != nullptr) *xdot_norm = (x_next - state.x).norm() / h;
  if (!x_next.allFinite()) return false;
  state.x = std::move(x_next);
  state.zeta += h * zeta_dot;
  state.time += h;
  return true;
}

namespace {

TraceSample make_sample(const GameTensor& game, const ConstraintGeometry& geom,
                        const AnaState& state, double xdot_norm) {
  TraceSample s;
  s.time = state.time;
  s.x = state.x;
  s.objective = objective_value(game, state.x);
  s.box_violation = box_violation(state.x);
  s.equality_norm = equality_residual(geom, state.x).second;
  s.zeta = state.zeta;
  s.xdot_norm = xdot_norm;
  return s;
}

}  // namespace

AnaResult run_to_critical(const GameTensor& game,
                          const ConstraintGeometry& geom, const Vector& x0,
                          const AnaSettings& settings) {
  if (x0.size() != game.total_strategies()) {
    throw std::invalid_argument("run_to_critical: x0 length mismatch");
  }
  if (!x0.allFinite()) {
    throw std::invalid_argument("run_to_critical: non-finite x0");
  }

  AnaResult result;
  AnaState state{x0, 0.0, 0.0};
  EvalWorkspace ws;

  result.trace.samples.push_back(make_sample(game, geom, state, 0.0));
  if (violation_signal(geom, state.x) <= settings.feasibility_tol) {
    result.trace.entry_time = state.time;
  }

  int quiet_steps = 0;
  double last_xdot = 0.0;
  long k = 0;
  for (; k < settings.max_steps; ++k) {
    AnaState previous = state;
    double xdot_norm = 0.0;
    if (!step(game, geom, state, settings, ws, &xdot_norm)) {
      state = previous;  // keep the last valid state
      result.fault = true;
      break;
    }
    if (!result.trace.entry_time &&
        violation_signal(geom, state.x) <= settings.feasibility_tol) {
      result.trace.entry_time = state.time;
    }
    if ((k + 1) % settings.trace_stride == 0) {
      result.trace.samples.push_back(make_sample(game, geom, state, xdot_norm));
    }
    last_xdot = xdot_norm;
    quiet_steps = xdot_norm <= settings.stationarity_tol ? quiet_steps + 1 : 0;
    if (quiet_steps >= settings.stationarity_window &&
        violation_signal(geom, state.x) <= settings.feasibility_tol) {
      result.converged = true;
      ++k;
      break;
    }
  }

  result.steps = k;
  result.x = state.x;
  result.final_zeta = state.zeta;
  if (result.trace.samples.back().time != state.time) {
    result.trace.samples.push_back(make_sample(game, geom, state, last_xdot));
  }
  return result;
}

}  // namespace acna
