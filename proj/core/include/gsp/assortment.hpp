#pragma once

#include <vector>

#include "gsp/types.hpp"

namespace gsp::assortment {

/// Per-alternative revenue r(i) > 0, defined for every id in 1..N.
class RevenueFunction {
 public:
  explicit RevenueFunction(std::vector<double> revenue_by_id);  // index 0 -> id 1

  int universe_size() const { return static_cast<int>(revenue_.size()); }
  double operator()(int id) const;

  /// Distinct revenue values in increasing order (r_1 < ... < r_k).
  const std::vector<double>& levels() const { return levels_; }

  friend bool operator==(const RevenueFunction&, const RevenueFunction&) = default;

 private:
  std::vector<double> revenue_;
  std::vector<double> levels_;
};

enum class Method { Exact, RevenueOrdered };

struct AssortmentSolution {
  Assortment assortment;
  double expected_revenue = 0.0;
  Method method = Method::Exact;
  long candidates_evaluated = 0;
};

/// Sum over i in S of P(i, S) * r(i).
double expected_revenue(const GspModel& m, const Assortment& s, const RevenueFunction& r);

/// Brute force over all 2^N - 1 non-empty subsets. Ties break toward the
/// smallest cardinality, then lexicographically.
AssortmentSolution optimal_assortment(const GspModel& m, const RevenueFunction& r,
                                      int max_universe = 20);

/// Evaluates only the k nested sets {i : r(i) >= level} and keeps the best;
/// ties break toward the larger set (the lower threshold).
AssortmentSolution revenue_ordered(const GspModel& m, const RevenueFunction& r);

struct RatioReport {
  AssortmentSolution heuristic;
  AssortmentSolution optimal;
  double ratio = 1.0;  // heuristic / optimal (1 when both are zero)
  double bound = 1.0;  // r_1 / r_k
};

RatioReport ratio_report(const GspModel& m, const RevenueFunction& r, int max_universe = 20);

}  // namespace gsp::assortment
