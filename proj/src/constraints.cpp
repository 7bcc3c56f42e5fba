#include "acna/constraints.hpp"

#include <algorithm>
#include <stdexcept>

namespace acna {

ConstraintGeometry::ConstraintGeometry(std::vector<int> strategy_counts)
    : counts_(std::move(strategy_counts)) {
  if (counts_.empty()) {
    throw std::invalid_argument("ConstraintGeometry: empty strategy counts");
  }
  offsets_.resize(counts_.size());
  int min_count = counts_[0];
  for (size_t i = 0; i < counts_.size(); ++i) {
    if (counts_[i] < 1) {
      throw std::invalid_argument("ConstraintGeometry: nonpositive strategy count");
    }
    offsets_[i] = total_;
    total_ += counts_[i];
    min_count = std::min(min_count, counts_[i]);
  }
  lambda_min_ = static_cast<double>(min_count);
}

Vector ConstraintGeometry::residual(const Vector& x) const {
  if (x.size() != total_) {
    throw std::invalid_argument("ConstraintGeometry::residual: length mismatch");
  }
  Vector h(num_players());
  for (int i = 0; i < num_players(); ++i) {
    h[i] = x.segment(offsets_[i], counts_[i]).sum() - 1.0;
  }
  return h;
}

Vector ConstraintGeometry::uniform_profile() const {
  Vector x(total_);
  for (int i = 0; i < num_players(); ++i) {
    x.segment(offsets_[i], counts_[i]).setConstant(1.0 / counts_[i]);
  }
  return x;
}

double box_violation(const Vector& x) {
  double g = 0.0;
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    if (x[k] < 0.0) g -= x[k];
    if (x[k] > 1.0) g += x[k] - 1.0;
  }
  return g;
}

Vector box_subgradient(const Vector& x) {
  Vector kappa = Vector::Zero(x.size());
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    if (x[k] < 0.0) kappa[k] = -1.0;
    else if (x[k] > 1.0) kappa[k] = 1.0;
  }
  return kappa;
}

std::pair<Vector, double> equality_residual(const ConstraintGeometry& geom,
                                            const Vector& x) {
  Vector h = geom.residual(x);
  return {h, h.norm()};
}

Vector equality_subgradient(const ConstraintGeometry& geom, const Vector& x,
                            double tol) {
  auto [h, norm] = equality_residual(geom, x);
  Vector eta = Vector::Zero(geom.total_strategies());
  if (norm <= tol || norm == 0.0) return eta;
  for (int i = 0; i < geom.num_players(); ++i) {
    eta.segment(geom.block_offset(i), geom.strategy_counts()[i])
        .setConstant(h[i] / norm);
  }
  return eta;
}

double violation_signal(const ConstraintGeometry& geom, const Vector& x) {
  return box_violation(x) + equality_residual(geom, x).second;
}

double gate(double g_value, double nu) {
  if (nu < 0.0 || nu >= 1.0) {
    throw std::invalid_argument("gate: nu must lie in [0,1)");
  }
  return g_value > 1.0 ? 0.0 : 1.0 - nu;
}

double zeta_rate(double epsilon_value) {
  return epsilon_value > 0.0 ? 1.0 : 0.0;
}

namespace {

// Projection of v onto the standard simplex {y >= 0, sum y = 1} by the
// sort-and-threshold rule. Entries of the result also stay <= 1.
void project_simplex(Eigen::Ref<Vector> v) {
  const int n = static_cast<int>(v.size());
  std::vector<double> u(v.data(), v.data() + n);
  std::sort(u.begin(), u.end(), std::greater<double>());
  double cumulative = 0.0;
  double tau = 0.0;
  for (int j = 0; j < n; ++j) {
    cumulative += u[j];
    const double candidate = (cumulative - 1.0) / (j + 1);
    if (u[j] - candidate > 0.0) tau = candidate;
  }
  for (int j = 0; j < n; ++j) v[j] = std::max(v[j] - tau, 0.0);
}

}  // namespace

Vector project_feasible(const ConstraintGeometry& geom, const Vector& x) {
  if (x.size() != geom.total_strategies()) {
    throw std::invalid_argument("project_feasible: length mismatch");
  }
  Vector out = x;
  for (int i = 0; i < geom.num_players(); ++i) {
    project_simplex(out.segment(geom.block_offset(i), geom.strategy_counts()[i]));
  }
  return out;
}

}  // namespace acna
