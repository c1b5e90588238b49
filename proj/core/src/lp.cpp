#include "gsp/lp.hpp"

#include <cmath>
#include <stdexcept>

#include "gsp/types.hpp"

namespace gsp::solver {

namespace {

// Phase-1 tableau over [A | I | b] with artificial basis. Minimizes the total
// artificial mass; zero optimum yields a feasible point, a positive optimum
// yields the dual vector behind the Farkas certificate.
class Phase1Simplex {
 public:
  Phase1Simplex(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, const FeasibilityOptions& opt)
      : m_(static_cast<int>(a.rows())), n_(static_cast<int>(a.cols())), opt_(opt) {
    tableau_.resize(m_, n_ + m_ + 1);
    tableau_.leftCols(n_) = a;
    tableau_.middleCols(n_, m_) = Eigen::MatrixXd::Identity(m_, m_);
    tableau_.col(n_ + m_) = b;
    basis_.resize(m_);
    for (int i = 0; i < m_; ++i) basis_[static_cast<std::size_t>(i)] = n_ + i;
    // Reduced costs c_j - c_B B^-1 a_j with c = (0,...,0, 1,...,1): the
    // artificial block starts as the identity, so the initial cost row is
    // c minus the column sums of the tableau.
    cost_row_ = Eigen::RowVectorXd::Zero(n_ + m_ + 1);
    cost_row_.segment(n_, m_).setOnes();
    for (int i = 0; i < m_; ++i) cost_row_ -= tableau_.row(i);
  }

  long run() {
    long iterations = 0;
    while (true) {
      if (++iterations > opt_.max_iterations)
        throw std::runtime_error("phase-1 simplex exceeded the iteration limit");
      // Bland: entering column = lowest index with a negative reduced cost.
      int entering = -1;
      for (int j = 0; j < n_ + m_; ++j) {
        if (cost_row_(j) < -opt_.zero_tol) {
          entering = j;
          break;
        }
      }
      if (entering < 0) break;  // optimal

      // Ratio test; Bland tie-break on the basic variable index.
      int leaving = -1;
      double best_ratio = 0.0;
      for (int i = 0; i < m_; ++i) {
        const double coef = tableau_(i, entering);
        if (coef <= opt_.zero_tol) continue;
        const double ratio = tableau_(i, n_ + m_) / coef;
        if (leaving < 0 || ratio < best_ratio - opt_.zero_tol ||
            (ratio < best_ratio + opt_.zero_tol &&
             basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leaving)])) {
          leaving = i;
          best_ratio = ratio;
        }
      }
      if (leaving < 0)
        throw std::runtime_error("phase-1 simplex became unbounded; input is malformed");
      pivot(leaving, entering);
    }
    return iterations;
  }

  double objective() const {
    double w = 0.0;
    for (int i = 0; i < m_; ++i)
      if (basis_[static_cast<std::size_t>(i)] >= n_) w += tableau_(i, n_ + m_);
    return w;
  }

  Eigen::VectorXd structural_solution() const {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n_);
    for (int i = 0; i < m_; ++i) {
      const int var = basis_[static_cast<std::size_t>(i)];
      if (var < n_) x(var) = std::max(0.0, tableau_(i, n_ + m_));
    }
    return x;
  }

  // Simplex multipliers y = c_B B^-1, read off the artificial columns:
  // their reduced cost is 1 - y_i.
  Eigen::VectorXd multipliers() const {
    Eigen::VectorXd y(m_);
    for (int i = 0; i < m_; ++i) y(i) = 1.0 - cost_row_(n_ + i);
    return y;
  }

 private:
  void pivot(int row, int col) {
    tableau_.row(row) /= tableau_(row, col);
    for (int i = 0; i < m_; ++i) {
      if (i == row) continue;
      const double factor = tableau_(i, col);
      if (factor != 0.0) tableau_.row(i) -= factor * tableau_.row(row);
    }
    const double cost_factor = cost_row_(col);
    if (cost_factor != 0.0) cost_row_ -= cost_factor * tableau_.row(row);
    basis_[static_cast<std::size_t>(row)] = col;
  }

  int m_ = 0;
  int n_ = 0;
  FeasibilityOptions opt_;
  Eigen::MatrixXd tableau_;
  Eigen::RowVectorXd cost_row_;
  std::vector<int> basis_;
};

}  // namespace

FeasibilityResult solve_feasibility(const LinearFeasibilityProblem& p,
                                    const FeasibilityOptions& options) {
  const auto rows = p.matrix.rows();
  const auto cols = p.matrix.cols();
  if (rows == 0 || cols == 0) throw ValidationError("feasibility problem has no rows or columns");
  if (p.rhs.size() != rows)
    throw ValidationError("rhs length does not match the constraint count");
  if (rows > options.max_rows || cols > options.max_cols)
    throw ValidationError("problem of size " + std::to_string(rows) + "x" + std::to_string(cols) +
                          " exceeds the configured cap " + std::to_string(options.max_rows) + "x" +
                          std::to_string(options.max_cols));
  if (!p.matrix.allFinite() || !p.rhs.allFinite())
    throw ValidationError("feasibility problem contains non-finite entries");

  // Flip rows with negative rhs so the artificial basis starts feasible.
  Eigen::MatrixXd a = p.matrix;
  Eigen::VectorXd b = p.rhs;
  Eigen::VectorXd flip = Eigen::VectorXd::Ones(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (b(i) < 0.0) {
      a.row(i) *= -1.0;
      b(i) *= -1.0;
      flip(i) = -1.0;
    }
  }

  Phase1Simplex simplex(a, b, options);
  FeasibilityResult result;
  result.iterations = simplex.run();
  result.infeasibility = simplex.objective();

  const double scale = std::max(1.0, b.lpNorm<1>());
  if (result.infeasibility <= options.zero_tol * scale) {
    Eigen::VectorXd x = simplex.structural_solution();
    if (!solution_is_valid(p, x, options.zero_tol, options.feasibility_tol))
      throw std::runtime_error("phase-1 produced a solution outside tolerance");
    result.status = FeasStatus::Feasible;
    result.solution = std::move(x);
    return result;
  }

  // Phase-1 optimum w > 0: with y = c_B B^-1 we have Aᵀy <= 0 and bᵀy = w,
  // so -y (flipped back per row) certifies infeasibility of the original.
  Eigen::VectorXd y = -simplex.multipliers().cwiseProduct(flip);
  if (!certificate_is_valid(p, y, options.zero_tol, options.feasibility_tol))
    throw std::runtime_error("phase-1 produced an invalid infeasibility certificate");
  result.status = FeasStatus::Infeasible;
  result.certificate = std::move(y);
  return result;
}

bool certificate_is_valid(const LinearFeasibilityProblem& p, const Eigen::VectorXd& y,
                          double tol_nonneg, double tol_negative) {
  if (y.size() != p.matrix.rows() || !y.allFinite()) return false;
  if ((p.matrix.transpose() * y).minCoeff() < -tol_nonneg) return false;
  return p.rhs.dot(y) < -tol_negative;
}

bool solution_is_valid(const LinearFeasibilityProblem& p, const Eigen::VectorXd& x,
                       double tol_nonneg, double tol_residual) {
  if (x.size() != p.matrix.cols() || !x.allFinite()) return false;
  if (x.minCoeff() < -tol_nonneg) return false;
  return (p.matrix * x - p.rhs).lpNorm<Eigen::Infinity>() <= tol_residual;
}

}  // namespace gsp::solver
