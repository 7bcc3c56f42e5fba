#ifndef ACNA_SWARM_HPP
#define ACNA_SWARM_HPP

#include "acna/ana.hpp"
#include "acna/oracle.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

namespace acna {

struct SwarmSettings {
  int swarm_size = 10;
  double c1 = 2.0;
  double c2 = 2.0;
  double stall_tol = 0.1;
  int stall_limit = 100;
  int max_iterations = 500;
  double global_tol = 1e-12;
  double init_lo = -10.0;
  double init_hi = 10.0;
  std::uint64_t seed = 0;
  /// Inertia schedule: 0.4 + (0.9 - 0.4) * (1 - k / max_iterations).
  double inertia(int iteration) const {
    return 0.4 + 0.5 * (1.0 - static_cast<double>(iteration) / max_iterations);
  }
  /// The position fed to the velocity update: the ANA critical point when
  /// true, the raw pre-ANA position otherwise.
  bool update_from_critical_point = true;
  /// Optional fixed initial positions (overrides random init); one vector
  /// per particle.
  std::vector<Vector> initial_positions;
  bool collect_traces = false;
};

struct SwarmState {
  std::vector<Vector> position;
  std::vector<Vector> velocity;
  std::vector<Vector> pbest;
  std::vector<double> pbest_value;
  Vector gbest;
  double gbest_value = 0.0;
  int stall_counter = 0;
  int iteration = 0;
};

/// One velocity/position update for every particle; l1, l2 are fresh scalar
/// draws per particle. No projection of the new positions.
void pso_update(SwarmState& state, const SwarmSettings& settings,
                std::vector<std::mt19937_64>& rngs);

using ProgressCallback =
    std::function<void(int iteration, double gbest_value, int stall_counter)>;

struct SolveResult {
  EquilibriumCertificate best;
  std::vector<double> history;  // gbest objective per outer iteration
  int iterations = 0;
  int fault_count = 0;
  bool ran = false;
  /// When collect_traces is set: per particle, the trace of the ANA run
  /// that produced its personal best.
  std::vector<AnaTrace> traces;
};

SolveResult run_acna(const GameTensor& game, const SwarmSettings& settings,
                     const AnaSettings& ana_settings,
                     const ProgressCallback& progress = {});

}  // namespace acna

#endif  // ACNA_SWARM_HPP
