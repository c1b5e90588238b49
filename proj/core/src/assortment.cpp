#include "gsp/assortment.hpp"

#include <algorithm>
#include <cmath>

namespace gsp::assortment {

RevenueFunction::RevenueFunction(std::vector<double> revenue_by_id)
    : revenue_(std::move(revenue_by_id)) {
  if (revenue_.empty()) throw ValidationError("revenue function covers no alternatives");
  for (std::size_t i = 0; i < revenue_.size(); ++i)
    if (!std::isfinite(revenue_[i]) || revenue_[i] <= 0.0)
      throw ValidationError("revenue for alternative " + std::to_string(i + 1) +
                            " must be a positive number");
  levels_ = revenue_;
  std::sort(levels_.begin(), levels_.end());
  levels_.erase(std::unique(levels_.begin(), levels_.end()), levels_.end());
}

double RevenueFunction::operator()(int id) const {
  if (id < 1 || id > universe_size())
    throw ValidationError("no revenue defined for alternative " + std::to_string(id));
  return revenue_[static_cast<std::size_t>(id - 1)];
}

double expected_revenue(const GspModel& m, const Assortment& s, const RevenueFunction& r) {
  if (s.empty()) throw ValidationError("expected_revenue: empty assortment");
  double total = 0.0;
  for (int x : s) total += choice_probability(m, x, s) * r(x);
  return total;
}

AssortmentSolution optimal_assortment(const GspModel& m, const RevenueFunction& r,
                                      int max_universe) {
  const int n = m.universe_size();
  if (n > max_universe)
    throw ValidationError("exact search over " + std::to_string(n) +
                          " alternatives exceeds the cap " + std::to_string(max_universe));
  if (r.universe_size() < n)
    throw ValidationError("revenue function covers only " + std::to_string(r.universe_size()) +
                          " of " + std::to_string(n) + " alternatives");

  AssortmentSolution best;
  best.method = Method::Exact;
  // all_assortments is ordered by size then lex, so keeping strict
  // improvements realizes the tie-break.
  for (const Assortment& s : all_assortments(n)) {
    const double revenue = expected_revenue(m, s, r);
    ++best.candidates_evaluated;
    if (best.assortment.empty() || revenue > best.expected_revenue) {
      best.assortment = s;
      best.expected_revenue = revenue;
    }
  }
  return best;
}

AssortmentSolution revenue_ordered(const GspModel& m, const RevenueFunction& r) {
  const int n = m.universe_size();
  if (r.universe_size() < n)
    throw ValidationError("revenue function covers only " + std::to_string(r.universe_size()) +
                          " of " + std::to_string(n) + " alternatives");

  AssortmentSolution best;
  best.method = Method::RevenueOrdered;
  // Lowest threshold (largest set) first: strict improvement keeps the
  // larger set on ties.
  for (double level : r.levels()) {
    std::vector<int> ids;
    for (int id = 1; id <= n; ++id)
      if (r(id) >= level) ids.push_back(id);
    const Assortment candidate(std::move(ids));
    const double revenue = expected_revenue(m, candidate, r);
    ++best.candidates_evaluated;
    if (best.assortment.empty() || revenue > best.expected_revenue) {
      best.assortment = candidate;
      best.expected_revenue = revenue;
    }
  }
  return best;
}

RatioReport ratio_report(const GspModel& m, const RevenueFunction& r, int max_universe) {
  RatioReport report;
  report.heuristic = revenue_ordered(m, r);
  report.optimal = optimal_assortment(m, r, max_universe);
  report.bound = r.levels().front() / r.levels().back();
  report.ratio = report.optimal.expected_revenue > 0.0
                     ? report.heuristic.expected_revenue / report.optimal.expected_revenue
                     : 1.0;
  return report;
}

}  // namespace gsp::assortment
