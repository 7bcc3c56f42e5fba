#include "acna/ana.hpp"

#include <doctest.h>

#include "test_support.hpp"

using namespace acna;
using namespace acna::testing;

TEST_CASE("rhs at the uniform NE is zero") {
  GameTensor game = rps3();
  ConstraintGeometry geom(game.strategy_counts());
  AnaState state{geom.uniform_profile(), 3.7, 0.0};
  AnaRhs out = rhs(game, geom, state, 0.0, 1e-10);
  CHECK(out.x_dot.lpNorm<Eigen::Infinity>() < 1e-9);
  CHECK(out.zeta_dot == 0.0);
}

TEST_CASE("rhs at a feasible non-NE point is the negative gradient") {
  GameTensor game = rps3();
  ConstraintGeometry geom(game.strategy_counts());
  Vector x(9);
  x << 0.6, 0.2, 0.2, 0.1, 0.8, 0.1, 0.3, 0.3, 0.4;
  AnaState state{x, 2.0, 0.0};
  AnaRhs out = rhs(game, geom, state, 0.0, 1e-10);
  Vector grad = objective_gradient(game, x);
  CHECK((out.x_dot + grad).lpNorm<Eigen::Infinity>() < 1e-12);
  CHECK(grad.norm() > 1e-3);  // genuinely non-stationary
}

TEST_CASE("rhs is momentarily zero far outside the box with zeta 0") {
  GameTensor game = rps3();
  ConstraintGeometry geom(game.strategy_counts());
  AnaState state{Vector::Constant(9, 5.0), 0.0, 0.0};
  CHECK(box_violation(state.x) > 1.0);
  AnaRhs out = rhs(game, geom, state, 0.0, 1e-10);
  CHECK(out.x_dot.lpNorm<Eigen::Infinity>() == 0.0);
  CHECK(out.zeta_dot == 1.0);
}

TEST_CASE("step at a fixed point only advances time") {
  GameTensor game = rps3();
  ConstraintGeometry geom(game.strategy_counts());
  AnaSettings settings;
  AnaState state{geom.uniform_profile(), 1.5, 0.0};
  EvalWorkspace ws;
  double xdot = 0.0;
  REQUIRE(step(game, geom, state, settings, ws, &xdot));
  CHECK(xdot < 1e-9);
  CHECK((state.x - geom.uniform_profile()).lpNorm<Eigen::Infinity>() < 1e-12);
  CHECK(state.zeta == 1.5);
  CHECK(state.time == doctest::Approx(settings.step_size));
}

TEST_CASE("scalar game: state above the box moves down") {
  // one player, one strategy, payoff 0: pure feasibility restoration
  GameTensor game({1}, {Vector::Zero(1)});
  ConstraintGeometry geom({1});
  AnaSettings settings;
  settings.step_size = 0.1;
  AnaState state{Vector::Constant(1, 2.0), 1.0, 0.0};
  EvalWorkspace ws;
  double xdot = 0.0;
  REQUIRE(step(game, geom, state, settings, ws, &xdot));
  // kappa = +1, block sum residual 1 gives eta = +1: velocity -(1 + 1) = -2,
  // clipped by the divergence guard to length 0.1
  CHECK(state.x[0] < 2.0);
  CHECK(state.x[0] == doctest::Approx(1.9));
}

TEST_CASE("zeta never decreases and freezes once feasible") {
  GameTensor game = rps3();
  ConstraintGeometry geom(game.strategy_counts());
  AnaSettings settings;
  settings.max_steps = 200'000;
  std::mt19937_64 rng(51);
  Vector x0 = random_profile(rng, 9, -10.0, 10.0);
  AnaResult run = run_to_critical(game, geom, x0, settings);
  REQUIRE(run.trace.entry_time.has_value());
  double previous = -1.0;
  for (const TraceSample& s : run.trace.samples) {
    CHECK(s.zeta >= previous);
    previous = s.zeta;
    if (s.time > *run.trace.entry_time) {
      CHECK(s.zeta == doctest::Approx(run.final_zeta));
    }
  }
}

TEST_CASE("run from the uniform NE converges immediately") {
  GameTensor game = rps3();
  ConstraintGeometry geom(game.strategy_counts());
  AnaSettings settings;
  AnaResult run = run_to_critical(game, geom, geom.uniform_profile(), settings);
  CHECK(run.converged);
  CHECK(run.steps <= settings.stationarity_window + 1);
  CHECK((run.x - geom.uniform_profile()).lpNorm<Eigen::Infinity>() < 1e-9);
}

TEST_CASE("one-player game flows to the dominant strategy") {
  Vector payoff(2);
  payoff << 1.0, 0.0;
  GameTensor game({2}, {payoff});
  ConstraintGeometry geom({2});
  AnaSettings settings;
  Vector x0(2);
  x0 << 0.4, 0.6;
  AnaResult run = run_to_critical(game, geom, x0, settings);
  CHECK(run.converged);
  CHECK(run.x[0] == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(run.x[1] == doctest::Approx(0.0).epsilon(1e-6));
  CHECK(objective_value(game, run.x) < 1e-10);
}

TEST_CASE("random start enters the feasible set and stays") {
  GameTensor game = rps3();
  ConstraintGeometry geom(game.strategy_counts());
  AnaSettings settings;
  settings.max_steps = 500'000;
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 3; ++trial) {
    Vector x0 = random_profile(rng, 9, -10.0, 10.0);
    AnaResult run = run_to_critical(game, geom, x0, settings);
    REQUIRE(run.trace.entry_time.has_value());
    for (const TraceSample& s : run.trace.samples) {
      if (s.time > *run.trace.entry_time) {
        CHECK(s.box_violation + s.equality_norm <= 1e-8);
      }
    }
  }
}

TEST_CASE("objective descends after entry") {
  GameTensor game = rps3();
  ConstraintGeometry geom(game.strategy_counts());
  AnaSettings settings;
  settings.max_steps = 500'000;
  std::mt19937_64 rng(59);
  Vector x0 = random_profile(rng, 9, -10.0, 10.0);
  AnaResult run = run_to_critical(game, geom, x0, settings);
  REQUIRE(run.trace.entry_time.has_value());
  double previous = std::numeric_limits<double>::infinity();
  for (const TraceSample& s : run.trace.samples) {
    if (s.time > *run.trace.entry_time) {
      CHECK(s.objective <= previous + 1e-9);
      previous = s.objective;
    }
  }
}

TEST_CASE("trajectory stays bounded") {
  GameTensor game = rps3();
  ConstraintGeometry geom(game.strategy_counts());
  AnaSettings settings;
  settings.max_steps = 500'000;
  std::mt19937_64 rng(61);
  Vector x0 = random_profile(rng, 9, -10.0, 10.0);
  const double bound = x0.lpNorm<Eigen::Infinity>() + 1.0;
  AnaResult run = run_to_critical(game, geom, x0, settings);
  for (const TraceSample& s : run.trace.samples) {
    CHECK(s.x.lpNorm<Eigen::Infinity>() <= bound);
  }
}

TEST_CASE("trace samples are consistent with recomputation") {
  GameTensor game = rps3();
  ConstraintGeometry geom(game.strategy_counts());
  AnaSettings settings;
  settings.max_steps = 50'000;
  std::mt19937_64 rng(67);
  Vector x0 = random_profile(rng, 9, -2.0, 2.0);
  AnaResult run = run_to_critical(game, geom, x0, settings);
  double previous_time = -1.0;
  for (const TraceSample& s : run.trace.samples) {
    CHECK(s.time > previous_time);
    previous_time = s.time;
    CHECK(s.objective == doctest::Approx(objective_value(game, s.x)).epsilon(1e-12));
    CHECK(s.box_violation == doctest::Approx(box_violation(s.x)).epsilon(1e-12));
    CHECK(s.equality_norm ==
          doctest::Approx(equality_residual(geom, s.x).second).epsilon(1e-12));
  }
}

TEST_CASE("non-finite inputs are rejected") {
  GameTensor game = rps3();
  ConstraintGeometry geom(game.strategy_counts());
  Vector bad = Vector::Zero(9);
  bad[4] = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(run_to_critical(game, geom, bad, AnaSettings{}),
                  std::invalid_argument);
  AnaState state{bad, 0.0, 0.0};
  CHECK_THROWS_AS(rhs(game, geom, state, 0.0), std::invalid_argument);
}
