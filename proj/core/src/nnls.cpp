#include "gsp/nnls.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "gsp/types.hpp"

namespace gsp::solver {

namespace {

constexpr double kDropTol = 1e-14;  // weights below this leave the support

// Exact minimization of |y - A_S mu|^2 over the simplex restricted to the
// support S, by an active-set walk from the current feasible point: solve the
// equality-constrained problem on the working set, step to the boundary when
// a weight would go negative, fix that weight at zero, repeat. Only accepts
// improving points, so the outer residual stays monotone.
void polish_on_support(const Eigen::MatrixXd& a, const Eigen::VectorXd& y,
                       Eigen::VectorXd& weights, std::set<int>& support) {
  if (support.empty()) return;
  std::vector<int> active(support.begin(), support.end());

  for (int guard = 0; guard < 4 * static_cast<int>(support.size()) + 8; ++guard) {
    const int s = static_cast<int>(active.size());
    Eigen::MatrixXd asub(a.rows(), s);
    Eigen::VectorXd current(s);
    for (int k = 0; k < s; ++k) {
      asub.col(k) = a.col(active[static_cast<std::size_t>(k)]);
      current(k) = weights(active[static_cast<std::size_t>(k)]);
    }
    // KKT system of min |y - A mu|^2 s.t. 1ᵀmu = 1 (mu free on the working set).
    Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(s + 1, s + 1);
    kkt.topLeftCorner(s, s) = 2.0 * asub.transpose() * asub;
    kkt.topRightCorner(s, 1).setOnes();
    kkt.bottomLeftCorner(1, s).setOnes();
    Eigen::VectorXd rhs(s + 1);
    rhs.head(s) = 2.0 * asub.transpose() * y;
    rhs(s) = 1.0;
    Eigen::VectorXd sol = kkt.fullPivLu().solve(rhs);
    Eigen::VectorXd target = sol.head(s);
    if (!target.allFinite()) break;

    if (target.minCoeff() >= -1e-12) {
      // Feasible optimum on the working set; accept if it does not regress.
      Eigen::VectorXd candidate = Eigen::VectorXd::Zero(a.cols());
      double sum = 0.0;
      for (int k = 0; k < s; ++k) {
        const double w = std::max(0.0, target(k));
        candidate(active[static_cast<std::size_t>(k)]) = w;
        sum += w;
      }
      if (sum <= 0.0) break;
      candidate /= sum;
      if ((y - a * candidate).squaredNorm() <= (y - a * weights).squaredNorm() + 1e-15)
        weights = candidate;
      break;
    }

    // Step from `current` toward `target` until the first weight hits zero.
    double step = 1.0;
    int blocking = -1;
    for (int k = 0; k < s; ++k) {
      if (target(k) < current(k)) {
        const double t = current(k) / (current(k) - target(k));
        if (t < step) {
          step = t;
          blocking = k;
        }
      }
    }
    if (blocking < 0) break;
    for (int k = 0; k < s; ++k) {
      const double w = std::max(0.0, current(k) + step * (target(k) - current(k)));
      weights(active[static_cast<std::size_t>(k)]) = w;
    }
    weights(active[static_cast<std::size_t>(blocking)]) = 0.0;
    active.erase(active.begin() + blocking);
    if (active.empty()) break;
  }

  // Renormalize (boundary steps can nudge the sum) and resync the support.
  double total = 0.0;
  for (int j : std::vector<int>(support.begin(), support.end())) {
    if (weights(j) <= kDropTol) {
      weights(j) = 0.0;
      support.erase(j);
    } else {
      total += weights(j);
    }
  }
  if (total > 0.0)
    for (int j : support) weights(j) /= total;
}

}  // namespace

NnlsResult nnls_simplex(const Eigen::MatrixXd& a, const Eigen::VectorXd& y,
                        const NnlsOptions& options) {
  const Eigen::Index cols = a.cols();
  if (cols == 0 || a.rows() == 0) throw ValidationError("nnls_simplex: empty matrix");
  if (y.size() != a.rows()) throw ValidationError("nnls_simplex: dimension mismatch");
  if (options.max_atoms < 1) throw ValidationError("nnls_simplex: atom budget must be >= 1");
  if (options.column_penalty != nullptr &&
      static_cast<Eigen::Index>(options.column_penalty->size()) != cols)
    throw ValidationError("nnls_simplex: penalty vector length mismatch");

  const auto penalty = [&](Eigen::Index j) {
    return options.column_penalty ? (*options.column_penalty)[static_cast<std::size_t>(j)] : 0.0;
  };

  NnlsResult result;
  result.weights = Eigen::VectorXd::Zero(cols);

  // Initial vertex: the column with the best penalized alignment score.
  Eigen::Index start = 0;
  double best_score = -std::numeric_limits<double>::infinity();
  for (Eigen::Index j = 0; j < cols; ++j) {
    const double score = a.col(j).dot(y) - penalty(j);
    if (score > best_score + 1e-15) {
      best_score = score;
      start = j;
    }
  }
  result.weights(start) = 1.0;
  std::set<int> support{static_cast<int>(start)};

  Eigen::VectorXd residual = y - a.col(start);
  double residual_norm = residual.norm();
  result.residual_history.push_back(residual_norm);

  for (long iter = 0; iter < options.max_iterations; ++iter) {
    if (residual_norm <= options.tol) break;

    const Eigen::VectorXd grad_score = a.transpose() * residual;  // = -grad/2
    const double lambda_score = [&] {
      double v = 0.0;
      for (int j : support) v += result.weights(j) * grad_score(j);
      return v;
    }();

    const bool at_budget = static_cast<int>(support.size()) >= options.max_atoms;

    // Frank-Wolfe vertex: best column overall, or best active column once the
    // budget is saturated. New columns pay their selection penalty.
    Eigen::Index fw = -1;
    double fw_selection = -std::numeric_limits<double>::infinity();
    if (!at_budget) {
      for (Eigen::Index j = 0; j < cols; ++j) {
        const double score = grad_score(j) - (support.count(static_cast<int>(j)) ? 0.0 : penalty(j));
        if (score > fw_selection + 1e-15) {
          fw_selection = score;
          fw = j;
        }
      }
    } else {
      for (int j : support) {
        if (grad_score(j) > fw_selection + 1e-15) {
          fw_selection = grad_score(j);
          fw = j;
        }
      }
    }

    // Away vertex: the active column pulling hardest against the gradient.
    int away = -1;
    double away_score = std::numeric_limits<double>::infinity();
    for (int j : support) {
      if (grad_score(j) < away_score - 1e-15) {
        away_score = grad_score(j);
        away = j;
      }
    }

    const double fw_gap = fw >= 0 ? grad_score(fw) - lambda_score : 0.0;
    const double away_gap = away >= 0 ? lambda_score - grad_score(away) : 0.0;
    const double scale = std::max(1.0, residual_norm);
    if (std::max(fw_gap, away_gap) <= options.gap_tol * scale) break;  // stalled

    Eigen::VectorXd direction;   // A d for the exact line search
    double gamma_max = 0.0;
    bool away_step = away_gap > fw_gap && support.size() > 1;
    if (away_step) {
      direction = a * result.weights - a.col(away);
      const double alpha = result.weights(away);
      gamma_max = alpha / (1.0 - alpha);
    } else {
      direction = a.col(fw) - a * result.weights;
      gamma_max = 1.0;
    }

    const double denom = direction.squaredNorm();
    if (denom <= 0.0) break;
    const double gamma = std::clamp(residual.dot(direction) / denom, 0.0, gamma_max);
    if (gamma <= 0.0) break;

    bool support_changed = false;
    if (away_step) {
      result.weights *= (1.0 + gamma);
      result.weights(away) -= gamma;
      if (result.weights(away) <= kDropTol) {  // drop step
        result.weights(away) = 0.0;
        support.erase(away);
        support_changed = true;
      }
    } else {
      result.weights *= (1.0 - gamma);
      result.weights(fw) += gamma;
      if (!support.count(static_cast<int>(fw))) {
        support.insert(static_cast<int>(fw));
        support_changed = true;
      }
    }

    if (support_changed) polish_on_support(a, y, result.weights, support);

    residual = y - a * result.weights;
    const double updated = residual.norm();
    residual_norm = std::min(residual_norm, updated);
    result.residual_history.push_back(residual_norm);
    result.iterations = iter + 1;
  }

  polish_on_support(a, y, result.weights, support);
  residual = y - a * result.weights;
  residual_norm = std::min(residual_norm, residual.norm());
  if (!result.residual_history.empty() && residual_norm < result.residual_history.back())
    result.residual_history.push_back(residual_norm);
  result.residual_norm = (y - a * result.weights).norm();
  return result;
}

}  // namespace gsp::solver
