#include "acna/swarm.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace acna {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Vector random_position(std::mt19937_64& rng, int m, double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  Vector x(m);
  for (int j = 0; j < m; ++j) x[j] = dist(rng);
  return x;
}

}  // namespace

void pso_update(SwarmState& state, const SwarmSettings& settings,
                std::vector<std::mt19937_64>& rngs) {
  const double alpha = settings.inertia(state.iteration);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (size_t i = 0; i < state.position.size(); ++i) {
    const double l1 = unit(rngs[i]);
    const double l2 = unit(rngs[i]);
    state.velocity[i] = alpha * state.velocity[i] +
                        settings.c1 * l1 * (state.pbest[i] - state.position[i]) +
                        settings.c2 * l2 * (state.gbest - state.position[i]);
    state.position[i] += state.velocity[i];
  }
}

SolveResult run_acna(const GameTensor& game, const SwarmSettings& settings,
                     const AnaSettings& ana_settings,
                     const ProgressCallback& progress) {
  if (settings.swarm_size < 1) {
    throw std::invalid_argument("run_acna: swarm_size must be >= 1");
  }
  const int m = game.total_strategies();
  const int r = settings.swarm_size;
  ConstraintGeometry geom(game.strategy_counts());

  // Per-particle RNG streams derived from the master seed, so scheduling
  // cannot change the draws.
  std::vector<std::mt19937_64> rngs;
  rngs.reserve(r);
  for (int i = 0; i < r; ++i) {
    rngs.emplace_back(splitmix64(settings.seed ^ (0x1000 + i)));
  }

  SwarmState swarm;
  swarm.position.resize(r);
  swarm.velocity.assign(r, Vector::Zero(m));
  swarm.pbest.resize(r);
  swarm.pbest_value.assign(r, std::numeric_limits<double>::infinity());
  swarm.gbest_value = std::numeric_limits<double>::infinity();
  for (int i = 0; i < r; ++i) {
    if (i < static_cast<int>(settings.initial_positions.size())) {
      if (settings.initial_positions[i].size() != m) {
        throw std::invalid_argument("run_acna: initial position length mismatch");
      }
      swarm.position[i] = settings.initial_positions[i];
    } else {
      swarm.position[i] =
          random_position(rngs[i], m, settings.init_lo, settings.init_hi);
    }
  }

  SolveResult result;
  if (settings.collect_traces) result.traces.resize(r);
  double previous_gbest = std::numeric_limits<double>::infinity();

  for (int k = 0; k < settings.max_iterations; ++k) {
    swarm.iteration = k;
    for (int i = 0; i < r; ++i) {
      AnaResult run =
          run_to_critical(game, geom, swarm.position[i], ana_settings);
      if (run.fault) {
        ++result.fault_count;
        swarm.position[i] =
            random_position(rngs[i], m, settings.init_lo, settings.init_hi);
        continue;
      }
      const double value = objective_value(game, run.x);
      if (value < swarm.pbest_value[i]) {
        swarm.pbest_value[i] = value;
        swarm.pbest[i] = run.x;
        if (settings.collect_traces) result.traces[i] = std::move(run.trace);
      }
      if (settings.update_from_critical_point) swarm.position[i] = run.x;
    }
    // Group best: minimal pbest value, lowest index on ties.
    for (int i = 0; i < r; ++i) {
      if (swarm.pbest_value[i] < swarm.gbest_value) {
        swarm.gbest_value = swarm.pbest_value[i];
        swarm.gbest = swarm.pbest[i];
      }
    }
    result.history.push_back(swarm.gbest_value);
    result.ran = true;

    if (std::abs(swarm.gbest_value - previous_gbest) <= settings.stall_tol) {
      ++swarm.stall_counter;
    } else {
      swarm.stall_counter = 0;
    }
    previous_gbest = swarm.gbest_value;
    if (progress) progress(k, swarm.gbest_value, swarm.stall_counter);

    result.iterations = k + 1;
    if (swarm.gbest_value <= settings.global_tol) break;
    if (swarm.stall_counter > settings.stall_limit) break;
    if (k + 1 >= settings.max_iterations) break;
    pso_update(swarm, settings, rngs);
  }

  if (swarm.gbest.size() != m) result.ran = false;  // every particle faulted
  if (result.ran) {
    result.best = certify(game, swarm.gbest);
  }
  return result;
}

}  // namespace acna
