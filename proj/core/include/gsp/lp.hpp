#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>

namespace gsp::solver {

/// Equality system A x = rhs with x >= 0 componentwise.
struct LinearFeasibilityProblem {
  Eigen::MatrixXd matrix;
  Eigen::VectorXd rhs;
};

struct FeasibilityOptions {
  int max_rows = 200;
  int max_cols = 5000;
  double feasibility_tol = 1e-7;   // |A x - rhs| accepted for a solution
  double zero_tol = 1e-9;          // reduced-cost / pivot threshold
  long max_iterations = 2'000'000;  // safety net; Bland's rule terminates anyway
};

enum class FeasStatus { Feasible, Infeasible };

/// Either a non-negative solution or a Farkas certificate y with
/// Aᵀy >= 0 and rhsᵀy < 0, proving no solution exists.
struct FeasibilityResult {
  FeasStatus status = FeasStatus::Infeasible;
  std::optional<Eigen::VectorXd> solution;
  std::optional<Eigen::VectorXd> certificate;
  double infeasibility = 0.0;  // phase-1 optimum (total artificial mass)
  long iterations = 0;
};

/// Decides A x = rhs, x >= 0 by a phase-1 simplex (dense tableau, Bland's
/// rule). On infeasible systems the phase-1 dual supplies the certificate.
/// The returned certificate/solution is always validated before return.
FeasibilityResult solve_feasibility(const LinearFeasibilityProblem& p,
                                    const FeasibilityOptions& options = {});

/// True when y proves infeasibility: Aᵀy >= -tol_nonneg and rhsᵀy < -tol_negative.
bool certificate_is_valid(const LinearFeasibilityProblem& p, const Eigen::VectorXd& y,
                          double tol_nonneg = 1e-9, double tol_negative = 1e-7);

/// True when x is a valid solution: x >= -tol_nonneg and |A x - rhs|_inf <= tol_residual.
bool solution_is_valid(const LinearFeasibilityProblem& p, const Eigen::VectorXd& x,
                       double tol_nonneg = 1e-9, double tol_residual = 1e-7);

}  // namespace gsp::solver
