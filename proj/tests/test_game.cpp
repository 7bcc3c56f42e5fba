#include "acna/game.hpp"

#include <doctest.h>

#include "test_support.hpp"

using namespace acna;
using namespace acna::testing;

namespace {

Vector profile_from_blocks(std::initializer_list<std::initializer_list<double>> blocks) {
  std::vector<double> flat;
  for (const auto& b : blocks) flat.insert(flat.end(), b.begin(), b.end());
  return Eigen::Map<Vector>(flat.data(), flat.size());
}

}  // namespace

TEST_CASE("construction validates shapes") {
  CHECK_THROWS_AS(GameTensor({2, 2}, {Vector::Zero(4)}), std::invalid_argument);
  CHECK_THROWS_AS(GameTensor({2, 2}, {Vector::Zero(4), Vector::Zero(3)}),
                  std::invalid_argument);
  CHECK_THROWS_AS(GameTensor({2, 0}, {Vector::Zero(0), Vector::Zero(0)}),
                  std::invalid_argument);
  Vector bad(4);
  bad << 1, 2, std::numeric_limits<double>::quiet_NaN(), 4;
  CHECK_THROWS_AS(GameTensor({2, 2}, {bad, Vector::Zero(4)}),
                  std::invalid_argument);
}

TEST_CASE("expected payoff: P1 rock, P2 paper, P3 uniform") {
  GameTensor game = rps3();
  Vector x = profile_from_blocks(
      {{1, 0, 0}, {0, 1, 0}, {1.0 / 3, 1.0 / 3, 1.0 / 3}});
  CHECK(expected_payoff(game, 0, x) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("expected payoff at pure profiles equals table lookup") {
  GameTensor game = rps3();
  for (int j1 = 0; j1 < 3; ++j1) {
    for (int j2 = 0; j2 < 3; ++j2) {
      for (int j3 = 0; j3 < 3; ++j3) {
        Vector x = Vector::Zero(9);
        x[j1] = x[3 + j2] = x[6 + j3] = 1.0;
        for (int p = 0; p < 3; ++p) {
          CHECK(expected_payoff(game, p, x) ==
                doctest::Approx(game.payoff(p, {j1, j2, j3})).epsilon(1e-14));
        }
      }
    }
  }
}

TEST_CASE("expected payoff at the uniform profile is zero for RPS") {
  GameTensor game = rps3();
  Vector x = Vector::Constant(9, 1.0 / 3);
  for (int p = 0; p < 3; ++p) {
    CHECK(expected_payoff(game, p, x) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(brute_force_payoff(game, p, x) == doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("expected payoff agrees with brute-force enumeration") {
  std::mt19937_64 rng(7);
  GameTensor game = random_game(rng, {2, 3, 2});
  for (int trial = 0; trial < 20; ++trial) {
    Vector x = random_profile(rng, game.total_strategies(), -2.0, 2.0);
    for (int p = 0; p < game.num_players(); ++p) {
      CHECK(expected_payoff(game, p, x) ==
            doctest::Approx(brute_force_payoff(game, p, x)).epsilon(1e-11));
    }
  }
}

TEST_CASE("dimension mismatch is rejected") {
  GameTensor game = rps3();
  CHECK_THROWS_AS(expected_payoff(game, 0, Vector::Zero(8)),
                  std::invalid_argument);
  CHECK_THROWS_AS(expected_payoff(game, 5, Vector::Zero(9)), std::out_of_range);
  CHECK_THROWS_AS(partial_expected_payoff(game, 0, 3, Vector::Zero(9)),
                  std::out_of_range);
}

TEST_CASE("partial payoff: rock against uniform opponents is zero") {
  GameTensor game = rps3();
  Vector x = Vector::Constant(9, 1.0 / 3);
  CHECK(partial_expected_payoff(game, 0, 0, x) ==
        doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("partial payoff against pure opponents is a table lookup") {
  GameTensor game = rps3();
  Vector x = Vector::Zero(9);
  x[1] = 1.0;      // P1: P (ignored by the partial)
  x[3 + 2] = 1.0;  // P2: S
  x[6 + 0] = 1.0;  // P3: R
  for (int j = 0; j < 3; ++j) {
    CHECK(partial_expected_payoff(game, 0, j, x) ==
          doctest::Approx(game.payoff(0, {j, 2, 0})).epsilon(1e-14));
  }
}

TEST_CASE("decomposition identity at random (possibly infeasible) points") {
  std::mt19937_64 rng(11);
  GameTensor game = rps3();
  for (int trial = 0; trial < 30; ++trial) {
    Vector x = random_profile(rng, 9, -3.0, 3.0);
    for (int p = 0; p < 3; ++p) {
      double total = 0.0;
      for (int j = 0; j < 3; ++j) {
        total += x[game.block_offset(p) + j] *
                 partial_expected_payoff(game, p, j, x);
      }
      CHECK(total == doctest::Approx(expected_payoff(game, p, x)).epsilon(1e-12));
    }
  }
}

TEST_CASE("multilinearity in a single player's block") {
  std::mt19937_64 rng(13);
  GameTensor game = rps3();
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    Vector x = random_profile(rng, 9, -2.0, 2.0);
    Vector a = random_profile(rng, 3, -2.0, 2.0);
    Vector b = random_profile(rng, 3, -2.0, 2.0);
    const double alpha = unit(rng);
    const int player = trial % 3;
    auto with_block = [&](const Vector& block) {
      Vector y = x;
      y.segment(game.block_offset(player), 3) = block;
      return expected_payoff(game, player, y);
    };
    const double mixed = with_block(alpha * a + (1 - alpha) * b);
    CHECK(mixed == doctest::Approx(alpha * with_block(a) +
                                   (1 - alpha) * with_block(b))
                       .epsilon(1e-12));
  }
}

TEST_CASE("regrets vanish at the uniform RPS profile") {
  GameTensor game = rps3();
  RegretReport report = regret_report(game, Vector::Constant(9, 1.0 / 3));
  CHECK(report.z.lpNorm<Eigen::Infinity>() < 1e-12);
  CHECK(report.objective == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("regrets at the pure (R,R,R) profile") {
  GameTensor game = rps3();
  Vector x = Vector::Zero(9);
  x[0] = x[3] = x[6] = 1.0;
  RegretReport report = regret_report(game, x);
  // deviation of player 1 to paper gains u1(P,R,R) - u1(R,R,R) = 2 - 0
  CHECK(report.z[1] == doctest::Approx(2.0));
  CHECK(report.objective >= 4.0);
}

TEST_CASE("objective is nonnegative and equals the clamp-square sum") {
  std::mt19937_64 rng(17);
  GameTensor game = rps3();
  for (int trial = 0; trial < 30; ++trial) {
    Vector x = random_profile(rng, 9, -2.0, 2.0);
    RegretReport report = regret_report(game, x);
    CHECK(report.objective >= 0.0);
    double manual = 0.0;
    for (int k = 0; k < 9; ++k) manual += std::pow(std::max(report.z[k], 0.0), 2);
    CHECK(report.objective == doctest::Approx(manual).epsilon(1e-12));
  }
}

TEST_CASE("gradient vanishes at the uniform NE") {
  GameTensor game = rps3();
  Vector grad = objective_gradient(game, Vector::Constant(9, 1.0 / 3));
  CHECK(grad.lpNorm<Eigen::Infinity>() < 1e-12);
}

TEST_CASE("gradient is zero everywhere for an all-zero game") {
  std::mt19937_64 rng(19);
  std::vector<Vector> payoffs(2, Vector::Zero(4));
  GameTensor game({2, 2}, std::move(payoffs));
  for (int trial = 0; trial < 10; ++trial) {
    Vector x = random_profile(rng, 4, -1.0, 2.0);
    CHECK(objective_gradient(game, x).lpNorm<Eigen::Infinity>() < 1e-13);
  }
}

TEST_CASE("constant-payoff regrets vanish only on the simplex") {
  // off the simplex a constant game still has regret: z_j scales with the
  // player's own missing mass, z_j = c * M_{-i} * (1 - M_i)
  std::vector<Vector> payoffs(2, Vector::Constant(4, 0.7));
  GameTensor game({2, 2}, std::move(payoffs));
  Vector feasible(4);
  feasible << 0.25, 0.75, 0.6, 0.4;
  CHECK(objective_value(game, feasible) == doctest::Approx(0.0));
  Vector off(4);
  off << 0.5, 0.1, 0.6, 0.4;  // player 1 mass 0.6
  RegretReport report = regret_report(game, off);
  CHECK(report.z[0] == doctest::Approx(0.7 * 1.0 * 0.4));
  CHECK(report.objective > 0.0);
}

TEST_CASE("gradient matches central finite differences") {
  std::mt19937_64 rng(23);
  SUBCASE("RPS") {
    GameTensor game = rps3();
    for (int trial = 0; trial < 25; ++trial) {
      Vector x = random_profile(rng, 9, 0.0, 1.0);
      Vector analytic = objective_gradient(game, x);
      Vector numeric = finite_difference_gradient(game, x);
      const double scale = std::max(1.0, numeric.norm());
      CHECK((analytic - numeric).norm() / scale < 1e-6);
    }
  }
  SUBCASE("random 3-player games") {
    for (int g = 0; g < 5; ++g) {
      GameTensor game = random_game(rng, {3, 2, 3});
      for (int trial = 0; trial < 10; ++trial) {
        Vector x = random_profile(rng, game.total_strategies(), 0.0, 1.0);
        Vector analytic = objective_gradient(game, x);
        Vector numeric = finite_difference_gradient(game, x);
        const double scale = std::max(1.0, numeric.norm());
        CHECK((analytic - numeric).norm() / scale < 1e-6);
      }
    }
  }
}
