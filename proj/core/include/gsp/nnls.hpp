#pragma once

#include <Eigen/Dense>
#include <vector>

namespace gsp::solver {

struct NnlsOptions {
  int max_atoms = 1;            // hard support budget
  double tol = 1e-9;            // stop once the residual norm drops below this
  double gap_tol = 1e-12;       // Frank-Wolfe gap treated as converged
  long max_iterations = 50000;
  /// Optional per-column score penalty, subtracted from a column's selection
  /// score before it can enter the support. Columns already in the support
  /// are never penalized.
  const std::vector<double>* column_penalty = nullptr;
};

struct NnlsResult {
  Eigen::VectorXd weights;  // on the probability simplex, sparse
  double residual_norm = 0.0;
  long iterations = 0;
  std::vector<double> residual_history;  // one entry per iteration, non-increasing
};

/// Minimizes |y - A w|_2 over the probability simplex by Frank-Wolfe with
/// away steps: the linear oracle picks the single best column, away steps
/// shed columns that stopped pulling their weight, and each support change is
/// followed by an exact least-squares polish over the active columns. Stops
/// at the residual target, a vanishing gap, or a saturated atom budget.
/// Deterministic: ties break toward the lowest column index.
NnlsResult nnls_simplex(const Eigen::MatrixXd& a, const Eigen::VectorXd& y,
                        const NnlsOptions& options);

}  // namespace gsp::solver
