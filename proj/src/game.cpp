#include "acna/game.hpp"

#include <cmath>
#include <stdexcept>

namespace acna {

namespace {

void check_profile(const GameTensor& game, const Vector& x, const char* op) {
  if (x.size() != game.total_strategies()) {
    throw std::invalid_argument(std::string(op) + ": profile length " +
                                std::to_string(x.size()) + " does not match m=" +
                                std::to_string(game.total_strategies()));
  }
}

// Iterates all pure profiles in flat (row-major) order.
struct ProfileOdometer {
  explicit ProfileOdometer(const std::vector<int>& counts)
      : counts(counts), idx(counts.size(), 0) {}

  bool next() {
    for (int p = static_cast<int>(counts.size()) - 1; p >= 0; --p) {
      if (++idx[p] < counts[p]) return true;
      idx[p] = 0;
    }
    return false;
  }

  const std::vector<int>& counts;
  std::vector<int> idx;
};

}  // namespace

GameTensor::GameTensor(std::vector<int> strategy_counts,
                       std::vector<Vector> payoffs,
                       std::vector<std::vector<std::string>> labels)
    : counts_(std::move(strategy_counts)),
      payoffs_(std::move(payoffs)),
      labels_(std::move(labels)) {
  const int n = static_cast<int>(counts_.size());
  if (n < 1) throw std::invalid_argument("GameTensor: need at least one player");
  num_profiles_ = 1;
  offsets_.resize(n);
  for (int i = 0; i < n; ++i) {
    if (counts_[i] < 1) {
      throw std::invalid_argument("GameTensor: strategy count for player " +
                                  std::to_string(i + 1) + " must be positive");
    }
    offsets_[i] = total_;
    total_ += counts_[i];
    num_profiles_ *= counts_[i];
  }
  if (static_cast<int>(payoffs_.size()) != n) {
    throw std::invalid_argument("GameTensor: expected " + std::to_string(n) +
                                " payoff tables, got " +
                                std::to_string(payoffs_.size()));
  }
  for (int i = 0; i < n; ++i) {
    if (payoffs_[i].size() != num_profiles_) {
      throw std::invalid_argument(
          "GameTensor: payoff table for player " + std::to_string(i + 1) +
          " has " + std::to_string(payoffs_[i].size()) + " entries, expected " +
          std::to_string(num_profiles_));
    }
    if (!payoffs_[i].allFinite()) {
      throw std::invalid_argument("GameTensor: non-finite payoff for player " +
                                  std::to_string(i + 1));
    }
  }
  if (!labels_.empty()) {
    if (static_cast<int>(labels_.size()) != n) {
      throw std::invalid_argument("GameTensor: label list count mismatch");
    }
    for (int i = 0; i < n; ++i) {
      if (static_cast<int>(labels_[i].size()) != counts_[i]) {
        throw std::invalid_argument("GameTensor: label count for player " +
                                    std::to_string(i + 1) + " mismatch");
      }
    }
  }
}

long GameTensor::flat_index(const std::vector<int>& profile) const {
  if (profile.size() != counts_.size()) {
    throw std::invalid_argument("flat_index: profile arity mismatch");
  }
  long flat = 0;
  for (size_t i = 0; i < counts_.size(); ++i) {
    if (profile[i] < 0 || profile[i] >= counts_[i]) {
      throw std::out_of_range("flat_index: strategy index out of range for player " +
                              std::to_string(i + 1));
    }
    flat = flat * counts_[i] + profile[i];
  }
  return flat;
}

double expected_payoff(const GameTensor& game, int player, const Vector& x) {
  check_profile(game, x, "expected_payoff");
  const int n = game.num_players();
  if (player < 0 || player >= n) {
    throw std::out_of_range("expected_payoff: player index out of range");
  }
  double total = 0.0;
  ProfileOdometer it(game.strategy_counts());
  long flat = 0;
  do {
    double prob = 1.0;
    for (int h = 0; h < n; ++h) prob *= x[game.block_offset(h) + it.idx[h]];
    total += game.payoff(player, flat) * prob;
    ++flat;
  } while (it.next());
  return total;
}

double partial_expected_payoff(const GameTensor& game, int player, int strategy,
                               const Vector& x) {
  check_profile(game, x, "partial_expected_payoff");
  const int n = game.num_players();
  if (player < 0 || player >= n) {
    throw std::out_of_range("partial_expected_payoff: player index out of range");
  }
  if (strategy < 0 || strategy >= game.strategies(player)) {
    throw std::out_of_range("partial_expected_payoff: strategy index out of range");
  }
  double total = 0.0;
  ProfileOdometer it(game.strategy_counts());
  long flat = 0;
  do {
    if (it.idx[player] == strategy) {
      double prob = 1.0;
      for (int h = 0; h < n; ++h) {
        if (h != player) prob *= x[game.block_offset(h) + it.idx[h]];
      }
      total += game.payoff(player, flat) * prob;
    }
    ++flat;
  } while (it.next());
  return total;
}

Vector partial_payoff_vector(const GameTensor& game, const Vector& x) {
  check_profile(game, x, "partial_payoff_vector");
  const int n = game.num_players();
  Vector partials = Vector::Zero(game.total_strategies());
  ProfileOdometer it(game.strategy_counts());
  long flat = 0;
  do {
    for (int i = 0; i < n; ++i) {
      double prob = 1.0;
      for (int h = 0; h < n; ++h) {
        if (h != i) prob *= x[game.block_offset(h) + it.idx[h]];
      }
      partials[game.block_offset(i) + it.idx[i]] += game.payoff(i, flat) * prob;
    }
    ++flat;
  } while (it.next());
  return partials;
}

RegretReport regret_report(const GameTensor& game, const Vector& x) {
  check_profile(game, x, "regret_report");
  const int n = game.num_players();
  RegretReport report;
  report.z = partial_payoff_vector(game, x);
  for (int i = 0; i < n; ++i) {
    const int off = game.block_offset(i);
    const int mi = game.strategies(i);
    const double ui = x.segment(off, mi).dot(report.z.segment(off, mi));
    report.z.segment(off, mi).array() -= ui;
  }
  report.q = report.z.cwiseMax(0.0);
  report.objective = report.q.squaredNorm();
  return report;
}

double objective_value(const GameTensor& game, const Vector& x) {
  return regret_report(game, x).objective;
}

Vector objective_gradient(const GameTensor& game, const Vector& x,
                          EvalWorkspace& ws) {
  check_profile(game, x, "objective_gradient");
  const int n = game.num_players();
  const int m = game.total_strategies();

  ws.partials = Vector::Zero(m);
  ws.block_payoff = Vector::Zero(n);
  if (ws.cross.rows() != m) ws.cross.resize(m, m);
  ws.cross.setZero();

  // One pass over pure profiles accumulates the partial payoffs
  //   partials[(i,j)] = u^i(s_j^i, x^{-i})
  // and the second-order multilinear partials
  //   cross[(i,j),(r,k)] = d partials[(i,j)] / d x^r_k   for r != i.
  ProfileOdometer it(game.strategy_counts());
  long flat = 0;
  do {
    for (int i = 0; i < n; ++i) {
      const double ui = game.payoff(i, flat);
      if (ui == 0.0) continue;
      const int row = game.block_offset(i) + it.idx[i];
      double prod_excl_i = 1.0;
      for (int h = 0; h < n; ++h) {
        if (h != i) prod_excl_i *= x[game.block_offset(h) + it.idx[h]];
      }
      ws.partials[row] += ui * prod_excl_i;
      for (int r = 0; r < n; ++r) {
        if (r == i) continue;
        double prod = 1.0;
        for (int h = 0; h < n; ++h) {
          if (h != i && h != r) prod *= x[game.block_offset(h) + it.idx[h]];
        }
        ws.cross(row, game.block_offset(r) + it.idx[r]) += ui * prod;
      }
    }
    ++flat;
  } while (it.next());

  // q = max(z, 0) with z = partials - u^i(x) broadcast per block.
  ws.q = ws.partials;
  for (int i = 0; i < n; ++i) {
    const int off = game.block_offset(i);
    const int mi = game.strategies(i);
    const double ui = x.segment(off, mi).dot(ws.partials.segment(off, mi));
    ws.block_payoff[i] = ui;
    ws.q.segment(off, mi).array() -= ui;
  }
  ws.q = ws.q.cwiseMax(0.0);

  // grad = sum_{i,j} 2 q_j^i grad z_j^i. Own-block part uses
  // d z_j^i / d x^i_k = -partials[(i,k)]; the cross part contracts the
  // accumulator with c[(i,j)] = w_j^i - x_j^i * sum_l w_l^i, w = 2q.
  Vector grad = Vector::Zero(m);
  ws.coeff = 2.0 * ws.q;
  for (int i = 0; i < n; ++i) {
    const int off = game.block_offset(i);
    const int mi = game.strategies(i);
    const double wsum = ws.coeff.segment(off, mi).sum();
    grad.segment(off, mi) -= wsum * ws.partials.segment(off, mi);
    ws.coeff.segment(off, mi) -= wsum * x.segment(off, mi);
  }
  grad.noalias() += ws.cross.transpose() * ws.coeff;
  return grad;
}

Vector objective_gradient(const GameTensor& game, const Vector& x) {
  EvalWorkspace ws;
  return objective_gradient(game, x, ws);
}

}  // namespace acna
