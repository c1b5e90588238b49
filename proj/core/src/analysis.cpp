#include "gsp/analysis.hpp"

#include <algorithm>
#include <map>

#include "gsp/lp.hpp"

namespace gsp::analysis {

namespace {

/// Row pairs (i, j) with rows[i].assortment a strict subset of rows[j]'s.
std::vector<std::pair<std::size_t, std::size_t>> nested_row_pairs(const ChoiceTable& table) {
  const auto& rows = table.rows();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows.size(); ++j) {
      if (i == j) continue;
      if (rows[i].assortment.size() < rows[j].assortment.size() &&
          rows[i].assortment.subset_of(rows[j].assortment))
        pairs.emplace_back(i, j);
    }
  return pairs;
}

double member_share_sum(const ChoiceTable::Row& row) {
  double sum = 0.0;
  for (double p : row.shares) sum += p;
  return sum;
}

}  // namespace

std::vector<RegularityViolation> check_regularity(const ChoiceTable& table, double tol) {
  std::vector<RegularityViolation> violations;
  const auto& rows = table.rows();
  for (const auto& [small_idx, large_idx] : nested_row_pairs(table)) {
    const auto& small = rows[small_idx];
    const auto& large = rows[large_idx];
    for (std::size_t k = 0; k < small.assortment.size(); ++k) {
      const int x = small.assortment.members()[k];
      const double p_small = small.shares[k];
      const double p_large = table.prob(x, large.assortment);
      if (p_large > p_small + tol)
        violations.push_back({x, small.assortment, large.assortment, p_small, p_large});
    }
  }
  return violations;
}

std::vector<DemandMonotonicityViolation> check_demand_monotonicity(const ChoiceTable& table,
                                                                   double tol) {
  std::vector<DemandMonotonicityViolation> violations;
  const auto& rows = table.rows();
  for (const auto& [small_idx, large_idx] : nested_row_pairs(table)) {
    const double sum_small = member_share_sum(rows[small_idx]);
    const double sum_large = member_share_sum(rows[large_idx]);
    if (sum_small > sum_large + tol)
      violations.push_back(
          {rows[small_idx].assortment, rows[large_idx].assortment, sum_small, sum_large});
  }
  return violations;
}

bool PrecedenceRelation::has_edge(int from, int to) const {
  return std::any_of(edges.begin(), edges.end(),
                     [&](const PrecedenceEdge& e) { return e.from == from && e.to == to; });
}

PrecedenceRelation ram_relation(const ChoiceTable& table, double tol) {
  PrecedenceRelation relation;
  const int n = table.universe_size();
  for (int x = 1; x <= n; ++x) {
    for (int y = 1; y <= n; ++y) {
      if (x == y) continue;
      bool decidable = false;
      // Witnesses scanned in table order; the first strict increase wins.
      for (const auto& row : table.rows()) {
        const Assortment& s = row.assortment;
        if (!s.contains(x) || !s.contains(y)) continue;
        std::vector<int> reduced;
        for (int id : s)
          if (id != y) reduced.push_back(id);
        const Assortment without(std::move(reduced));
        if (!table.has_row(without)) continue;
        decidable = true;
        const double p_with = table.prob(x, s);
        const double p_without = table.prob(x, without);
        if (p_without < p_with - tol) {
          relation.edges.push_back({x, y, s, p_without, p_with});
          break;
        }
      }
      if (!decidable) ++relation.pairs_skipped;
    }
  }
  return relation;
}

RamResult ram_membership(const ChoiceTable& table) {
  RamResult result;
  if (!table.complete()) {
    result.status = RamStatus::Undetermined;
    result.detail = "table is missing rows; the acyclicity test needs every non-empty subset";
    return result;
  }
  const PrecedenceRelation relation = ram_relation(table);

  const int n = table.universe_size();
  std::vector<std::vector<int>> next(static_cast<std::size_t>(n) + 1);
  for (const auto& e : relation.edges) next[static_cast<std::size_t>(e.from)].push_back(e.to);

  // Depth-first search for a directed cycle; 0 = new, 1 = on stack, 2 = done.
  std::vector<int> color(static_cast<std::size_t>(n) + 1, 0);
  std::vector<int> stack;
  std::vector<int> cycle;
  auto dfs = [&](auto&& self, int v) -> bool {
    color[static_cast<std::size_t>(v)] = 1;
    stack.push_back(v);
    for (int w : next[static_cast<std::size_t>(v)]) {
      if (color[static_cast<std::size_t>(w)] == 1) {
        const auto begin = std::find(stack.begin(), stack.end(), w);
        cycle.assign(begin, stack.end());
        return true;
      }
      if (color[static_cast<std::size_t>(w)] == 0 && self(self, w)) return true;
    }
    stack.pop_back();
    color[static_cast<std::size_t>(v)] = 2;
    return false;
  };
  for (int v = 1; v <= n; ++v) {
    if (color[static_cast<std::size_t>(v)] == 0 && dfs(dfs, v)) {
      result.status = RamStatus::NotInRam;
      result.cycle = cycle;
      result.detail = "precedence relation has a cycle";
      return result;
    }
  }
  result.status = RamStatus::InRam;
  result.detail = relation.edges.empty() ? "precedence relation is empty"
                                         : "precedence relation is acyclic";
  return result;
}

MembershipVerdict gsp_membership(const ChoiceTable& table, const MembershipOptions& options) {
  MembershipVerdict verdict;
  const int n = table.universe_size();
  if (n > options.max_universe) {
    verdict.status = MembershipVerdict::Status::Unknown;
    verdict.detail = "universe too large for exact membership (cap " +
                     std::to_string(options.max_universe) + ")";
    return verdict;
  }
  if (!table.complete()) {
    verdict.status = MembershipVerdict::Status::Unknown;
    verdict.detail = "table is missing rows; exact membership needs every non-empty subset";
    return verdict;
  }

  const std::vector<ConsumerType> types = enumerate_types(n);
  const std::vector<Assortment> assortments = all_assortments(n);

  // One equality row per (x, S) with x in S, then one per (0, S), then the
  // unit-mass row. Behavior duplicates collapse onto their first
  // (enumeration-order) representative.
  std::vector<std::vector<int>> choices(types.size());
  for (std::size_t t = 0; t < types.size(); ++t) {
    choices[t].reserve(assortments.size());
    for (const Assortment& s : assortments) choices[t].push_back(choose(types[t], s));
  }
  std::map<std::vector<int>, std::size_t> behavior_to_column;
  std::vector<std::size_t> representative;
  for (std::size_t t = 0; t < types.size(); ++t)
    if (behavior_to_column.emplace(choices[t], representative.size()).second)
      representative.push_back(t);

  Eigen::Index row_count = 1;
  for (const Assortment& s : assortments) row_count += static_cast<Eigen::Index>(s.size()) + 1;

  solver::LinearFeasibilityProblem problem;
  problem.matrix = Eigen::MatrixXd::Zero(row_count, static_cast<Eigen::Index>(representative.size()));
  problem.rhs.resize(row_count);
  Eigen::Index row = 0;
  for (std::size_t si = 0; si < assortments.size(); ++si) {
    const Assortment& s = assortments[si];
    std::vector<int> outcomes(s.members());
    outcomes.push_back(kNoChoice);
    for (int x : outcomes) {
      for (std::size_t c = 0; c < representative.size(); ++c)
        if (choices[representative[c]][si] == x)
          problem.matrix(row, static_cast<Eigen::Index>(c)) = 1.0;
      problem.rhs(row) = table.prob(x, s);
      ++row;
    }
  }
  problem.matrix.row(row).setOnes();
  problem.rhs(row) = 1.0;

  solver::FeasibilityOptions lp_options;
  lp_options.max_rows = std::max(lp_options.max_rows, static_cast<int>(row_count));
  lp_options.max_cols = std::max(lp_options.max_cols, static_cast<int>(representative.size()));
  const solver::FeasibilityResult lp = solver::solve_feasibility(problem, lp_options);

  if (lp.status == solver::FeasStatus::Infeasible) {
    verdict.status = MembershipVerdict::Status::NotInGsp;
    verdict.certificate = lp.certificate;
    verdict.detail =
        "no consumer-type mixture reproduces the table; the certificate y satisfies "
        "A'y >= 0 on every type column and rhs'y < 0";
    return verdict;
  }

  std::vector<Atom> atoms;
  for (std::size_t c = 0; c < representative.size(); ++c) {
    const double w = (*lp.solution)(static_cast<Eigen::Index>(c));
    if (w > 1e-12) atoms.push_back(Atom{types[representative[c]], w});
  }
  GspModel model(n, std::move(atoms));

  // Never trust the solver: re-evaluate the witness against the table.
  double worst = 0.0;
  for (const Assortment& s : assortments) {
    for (int x : s) worst = std::max(worst, std::abs(choice_probability(model, x, s) - table.prob(x, s)));
    worst = std::max(worst, std::abs(choice_probability(model, kNoChoice, s) - table.prob(kNoChoice, s)));
  }
  if (worst > options.fit_tol) {
    verdict.status = MembershipVerdict::Status::Unknown;
    verdict.detail = "solver returned a mixture that misses the table by " + std::to_string(worst);
    return verdict;
  }
  verdict.status = MembershipVerdict::Status::InGsp;
  verdict.model = std::move(model);
  verdict.detail = "witness mixture reproduces the table (max deviation " + std::to_string(worst) + ")";
  return verdict;
}

}  // namespace gsp::analysis
