#ifndef ACNA_ORACLE_HPP
#define ACNA_ORACLE_HPP

#include "acna/constraints.hpp"
#include "acna/game.hpp"

#include <vector>

namespace acna {

struct EquilibriumCertificate {
  Vector x;
  double objective = 0.0;
  Vector max_regret;  // per player: max_j z_j^i
  double box_violation = 0.0;
  double equality_norm = 0.0;
  bool verdict = false;
};

/// Recomputes objective, regrets and feasibility residuals from scratch and
/// judges the candidate. verdict is true iff G <= tol_feas, H <= tol_feas
/// and every player's max regret is <= tol_regret.
EquilibriumCertificate certify(const GameTensor& game, const Vector& x,
                               double tol_regret = 1e-6,
                               double tol_feas = 1e-8);

/// All pure-strategy profiles with no strictly improving unilateral pure
/// deviation. Guard: at most 1e7 profiles.
std::vector<std::vector<int>> enumerate_pure_ne(const GameTensor& game);

/// Exact mixed NE of a 2-player game by support enumeration over equal-size
/// supports; singular indifference systems are skipped. Guard: m_i <= 5.
std::vector<Vector> two_player_support_enumeration(const GameTensor& game);

struct GridScanResult {
  double objective = 0.0;
  Vector x;
};

/// Minimum of the objective over the product of per-player simplex grids
/// with entries k/resolution. Deterministic lexicographic argmin on ties.
/// Guard: at most 1e7 grid points.
GridScanResult grid_regret_scan(const GameTensor& game, int resolution);

}  // namespace acna

#endif  // ACNA_ORACLE_HPP
