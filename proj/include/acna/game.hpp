#ifndef ACNA_GAME_HPP
#define ACNA_GAME_HPP

#include <Eigen/Core>

#include <string>
#include <vector>

namespace acna {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Finite N-player normal-form game. One payoff table per player, flattened
/// row-major with player 1's strategy index outermost and player N's
/// innermost: flat = ((j_1*m_2 + j_2)*m_3 + ...).
///
/// Immutable after construction; all evaluation functions below are pure and
/// may be called concurrently on a shared instance.
class GameTensor {
 public:
  GameTensor(std::vector<int> strategy_counts, std::vector<Vector> payoffs,
             std::vector<std::vector<std::string>> labels = {});

  int num_players() const { return static_cast<int>(counts_.size()); }
  const std::vector<int>& strategy_counts() const { return counts_; }
  int strategies(int player) const { return counts_[player]; }

  /// m = sum of strategy counts; the length of a mixed profile vector.
  int total_strategies() const { return total_; }
  long num_profiles() const { return num_profiles_; }

  /// Offset of player's block inside a length-m profile vector.
  int block_offset(int player) const { return offsets_[player]; }

  double payoff(int player, long flat) const { return payoffs_[player][flat]; }
  double payoff(int player, const std::vector<int>& profile) const {
    return payoffs_[player][flat_index(profile)];
  }
  const Vector& payoff_table(int player) const { return payoffs_[player]; }

  long flat_index(const std::vector<int>& profile) const;

  bool has_labels() const { return !labels_.empty(); }
  const std::vector<std::vector<std::string>>& labels() const { return labels_; }

 private:
  std::vector<int> counts_;
  std::vector<int> offsets_;
  int total_ = 0;
  long num_profiles_ = 0;
  std::vector<Vector> payoffs_;
  std::vector<std::vector<std::string>> labels_;
};

/// z, clamped regrets q = max(z, 0), and the objective sum of q squared.
struct RegretReport {
  Vector z;
  Vector q;
  double objective = 0.0;
};

/// Reusable buffers for the evaluation routines; avoids per-call allocation
/// in the integrator's hot loop.
struct EvalWorkspace {
  Vector partials;  // u^i(s_j^i, x^{-i}) for every (i, j), length m
  Vector block_payoff;  // u^i(x) per player, length N
  Vector q;
  Vector coeff;
  Matrix cross;  // cross-player partial accumulator, m x m
};

/// Expected payoff of `player` under mixed profile `x` (multilinear form,
/// evaluated as-is, no clamping of infeasible entries).
double expected_payoff(const GameTensor& game, int player, const Vector& x);

/// u^i(s_j^i, x^{-i}): player's payoff for pure strategy `strategy` against
/// the opponents' mixtures. Independent of player's own block.
double partial_expected_payoff(const GameTensor& game, int player,
                               int strategy, const Vector& x);

/// All partial expected payoffs at once: entry (offset_i + j) holds
/// u^i(s_j^i, x^{-i}).
Vector partial_payoff_vector(const GameTensor& game, const Vector& x);

RegretReport regret_report(const GameTensor& game, const Vector& x);
double objective_value(const GameTensor& game, const Vector& x);

/// Analytic gradient of the objective sum_{i,j} max(z_j^i, 0)^2.
Vector objective_gradient(const GameTensor& game, const Vector& x);
Vector objective_gradient(const GameTensor& game, const Vector& x,
                          EvalWorkspace& ws);

}  // namespace acna

#endif  // ACNA_GAME_HPP
