#include "acna/oracle.hpp"

#include <Eigen/LU>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace acna {

EquilibriumCertificate certify(const GameTensor& game, const Vector& x,
                               double tol_regret, double tol_feas) {
  if (x.size() != game.total_strategies()) {
    throw std::invalid_argument("certify: profile length mismatch");
  }
  ConstraintGeometry geom(game.strategy_counts());
  EquilibriumCertificate cert;
  cert.x = x;

  const RegretReport report = regret_report(game, x);
  cert.objective = report.objective;
  cert.max_regret.resize(game.num_players());
  for (int i = 0; i < game.num_players(); ++i) {
    cert.max_regret[i] =
        report.z.segment(game.block_offset(i), game.strategies(i)).maxCoeff();
  }
  cert.box_violation = box_violation(x);
  cert.equality_norm = equality_residual(geom, x).second;
  cert.verdict = cert.box_violation <= tol_feas &&
                 cert.equality_norm <= tol_feas &&
                 cert.max_regret.maxCoeff() <= tol_regret;
  return cert;
}

std::vector<std::vector<int>> enumerate_pure_ne(const GameTensor& game) {
  if (game.num_profiles() > 10'000'000L) {
    throw std::invalid_argument("enumerate_pure_ne: game too large to enumerate");
  }
  const int n = game.num_players();
  std::vector<std::vector<int>> equilibria;
  std::vector<int> profile(n, 0);
  bool more = true;
  while (more) {
    bool is_ne = true;
    for (int i = 0; i < n && is_ne; ++i) {
      const double current = game.payoff(i, profile);
      std::vector<int> deviation = profile;
      for (int j = 0; j < game.strategies(i); ++j) {
        if (j == profile[i]) continue;
        deviation[i] = j;
        if (game.payoff(i, deviation) > current) {
          is_ne = false;
          break;
        }
      }
    }
    if (is_ne) equilibria.push_back(profile);
    more = false;
    for (int p = n - 1; p >= 0; --p) {
      if (++profile[p] < game.strategies(p)) {
        more = true;
        break;
      }
      profile[p] = 0;
    }
  }
  return equilibria;
}

namespace {

// Next k-subset of {0..n-1} in lexicographic order; false when exhausted.
bool next_subset(std::vector<int>& s, int n) {
  const int k = static_cast<int>(s.size());
  for (int i = k - 1; i >= 0; --i) {
    if (s[i] < n - k + i) {
      ++s[i];
      for (int j = i + 1; j < k; ++j) s[j] = s[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

std::vector<Vector> two_player_support_enumeration(const GameTensor& game) {
  if (game.num_players() != 2) {
    throw std::invalid_argument(
        "two_player_support_enumeration: requires exactly 2 players");
  }
  const int m1 = game.strategies(0);
  const int m2 = game.strategies(1);
  if (m1 > 5 || m2 > 5) {
    throw std::invalid_argument(
        "two_player_support_enumeration: strategy counts above the desk-scale guard");
  }

  // Payoff matrices: A for player 1, B for player 2, indexed (j1, j2).
  Matrix a(m1, m2), b(m1, m2);
  for (int j1 = 0; j1 < m1; ++j1) {
    for (int j2 = 0; j2 < m2; ++j2) {
      const std::vector<int> profile{j1, j2};
      a(j1, j2) = game.payoff(0, profile);
      b(j1, j2) = game.payoff(1, profile);
    }
  }

  constexpr double kProbTol = 1e-9;
  std::vector<Vector> equilibria;
  auto record = [&](const Vector& p1, const Vector& p2) {
    Vector x(m1 + m2);
    x << p1, p2;
    for (const Vector& known : equilibria) {
      if ((known - x).lpNorm<Eigen::Infinity>() < 1e-9) return;
    }
    equilibria.push_back(x);
  };

  for (int k = 1; k <= std::min(m1, m2); ++k) {
    std::vector<int> s1(k);
    for (int i = 0; i < k; ++i) s1[i] = i;
    do {
      std::vector<int> s2(k);
      for (int i = 0; i < k; ++i) s2[i] = i;
      do {
        // Player 2's mixture makes player 1 indifferent across s1, and vice
        // versa. Unknowns: (y on s2, v1) and (x on s1, v2).
        Matrix sys1 = Matrix::Zero(k + 1, k + 1);
        Matrix sys2 = Matrix::Zero(k + 1, k + 1);
        for (int r = 0; r < k; ++r) {
          for (int c = 0; c < k; ++c) {
            sys1(r, c) = a(s1[r], s2[c]);
            sys2(r, c) = b(s1[c], s2[r]);
          }
          sys1(r, k) = -1.0;
          sys2(r, k) = -1.0;
          sys1(k, r) = 1.0;
          sys2(k, r) = 1.0;
        }
        Vector unit = Vector::Zero(k + 1);
        unit[k] = 1.0;

        Eigen::FullPivLU<Matrix> lu1(sys1);
        Eigen::FullPivLU<Matrix> lu2(sys2);
        if (!lu1.isInvertible() || !lu2.isInvertible()) continue;  // degenerate
        const Vector sol1 = lu1.solve(unit);  // y on s2, v1
        const Vector sol2 = lu2.solve(unit);  // x on s1, v2

        bool valid = true;
        for (int i = 0; i < k; ++i) {
          if (sol1[i] < -kProbTol || sol2[i] < -kProbTol) valid = false;
        }
        if (!valid) continue;

        Vector p1 = Vector::Zero(m1);
        Vector p2 = Vector::Zero(m2);
        for (int i = 0; i < k; ++i) {
          p1[s1[i]] = std::max(sol2[i], 0.0);
          p2[s2[i]] = std::max(sol1[i], 0.0);
        }
        const double v1 = sol1[k];
        const double v2 = sol2[k];

        // No profitable pure deviation outside the supports.
        for (int j = 0; j < m1 && valid; ++j) {
          if ((a.row(j) * p2)(0) > v1 + kProbTol) valid = false;
        }
        for (int j = 0; j < m2 && valid; ++j) {
          if ((p1.transpose() * b.col(j))(0) > v2 + kProbTol) valid = false;
        }
        if (valid) record(p1, p2);
      } while (next_subset(s2, m2));
    } while (next_subset(s1, m1));
  }
  return equilibria;
}

namespace {

// Compositions of `resolution` into `parts` nonnegative integers,
// lexicographic. Writes each normalized composition through `emit`.
template <typename Emit>
void for_each_composition(int resolution, int parts, std::vector<int>& buffer,
                          int index, int remaining, Emit&& emit) {
  if (index == parts - 1) {
    buffer[index] = remaining;
    emit(buffer);
    return;
  }
  for (int v = 0; v <= remaining; ++v) {
    buffer[index] = v;
    for_each_composition(resolution, parts, buffer, index + 1, remaining - v,
                         emit);
  }
}

long binomial(int n, int k) {
  long r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

}  // namespace

GridScanResult grid_regret_scan(const GameTensor& game, int resolution) {
  if (resolution < 1) {
    throw std::invalid_argument("grid_regret_scan: resolution must be >= 1");
  }
  const int n = game.num_players();
  long total = 1;
  for (int i = 0; i < n; ++i) {
    total *= binomial(resolution + game.strategies(i) - 1,
                      game.strategies(i) - 1);
    if (total > 10'000'000L) {
      throw std::invalid_argument("grid_regret_scan: grid too large");
    }
  }

  // Per-player grid points.
  std::vector<std::vector<Vector>> grids(n);
  for (int i = 0; i < n; ++i) {
    const int mi = game.strategies(i);
    std::vector<int> buffer(mi);
    for_each_composition(resolution, mi, buffer, 0, resolution,
                         [&](const std::vector<int>& c) {
                           Vector p(mi);
                           for (int j = 0; j < mi; ++j) {
                             p[j] = static_cast<double>(c[j]) / resolution;
                           }
                           grids[i].push_back(p);
                         });
  }

  GridScanResult best;
  best.objective = std::numeric_limits<double>::infinity();
  Vector x(game.total_strategies());
  std::vector<size_t> pick(n, 0);
  bool more = true;
  while (more) {
    for (int i = 0; i < n; ++i) {
      x.segment(game.block_offset(i), game.strategies(i)) = grids[i][pick[i]];
    }
    const double value = objective_value(game, x);
    if (value < best.objective) {
      best.objective = value;
      best.x = x;
    }
    more = false;
    for (int p = n - 1; p >= 0; --p) {
      if (++pick[p] < grids[p].size()) {
        more = true;
        break;
      }
      pick[p] = 0;
    }
  }
  return best;
}

}  // namespace acna
