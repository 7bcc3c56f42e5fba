#ifndef ACNA_CONSTRAINTS_HPP
#define ACNA_CONSTRAINTS_HPP

#include "acna/game.hpp"

#include <utility>
#include <vector>

namespace acna {

/// Geometry of the feasible set: the box [0,1]^m and the per-player
/// sum-to-one equalities h(x) = Cx - d, where C is the block indicator
/// matrix. C*C^T is diagonal with entries m_i, so its smallest eigenvalue is
/// min_i m_i.
class ConstraintGeometry {
 public:
  explicit ConstraintGeometry(std::vector<int> strategy_counts);

  int num_players() const { return static_cast<int>(counts_.size()); }
  int total_strategies() const { return total_; }
  const std::vector<int>& strategy_counts() const { return counts_; }
  int block_offset(int player) const { return offsets_[player]; }
  double lambda_min() const { return lambda_min_; }

  /// h(x) = Cx - d: per-player block sums minus one.
  Vector residual(const Vector& x) const;

  /// Uniform feasible profile x_j^i = 1/m_i; interior reference point.
  Vector uniform_profile() const;

 private:
  std::vector<int> counts_;
  std::vector<int> offsets_;
  int total_ = 0;
  double lambda_min_ = 0.0;
};

/// G(x): total box violation, sum of max(0,-x) + max(0,x-1) over entries.
double box_violation(const Vector& x);

/// Entrywise subgradient selection for G: -1 below 0, +1 above 1, 0 inside
/// [0,1] including the kinks.
Vector box_subgradient(const Vector& x);

/// (h(x), H(x) = ||h(x)||).
std::pair<Vector, double> equality_residual(const ConstraintGeometry& geom,
                                            const Vector& x);

/// Subgradient selection for H: C^T h / ||h|| when ||h|| > tol, else zero.
/// The default tol = 0 matches the exact selection; the discretized dynamics
/// pass their feasibility tolerance to suppress round-off-driven kicks.
Vector equality_subgradient(const ConstraintGeometry& geom, const Vector& x,
                            double tol = 0.0);

/// epsilon(x) = G(x) + H(x); zero exactly on the feasible set.
double violation_signal(const ConstraintGeometry& geom, const Vector& x);

/// Gate xi: 0 when the box violation exceeds 1, else 1 - nu.
double gate(double g_value, double nu);

/// d zeta / dt = sign(epsilon): 1 when strictly positive, 0 at zero.
double zeta_rate(double epsilon_value);

/// Euclidean projection onto the product of probability simplices.
Vector project_feasible(const ConstraintGeometry& geom, const Vector& x);

}  // namespace acna

#endif  // ACNA_CONSTRAINTS_HPP
