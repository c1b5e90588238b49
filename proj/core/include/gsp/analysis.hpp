#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "gsp/types.hpp"

namespace gsp::analysis {

/// Adding alternatives raised x's choice probability: P(x, larger) exceeds
/// P(x, smaller) even though smaller ⊂ larger.
struct RegularityViolation {
  int alternative = 0;
  Assortment smaller_set;
  Assortment larger_set;
  double p_small = 0.0;
  double p_large = 0.0;
};

/// All violating (x, S, S') triples among the rows present in the table.
std::vector<RegularityViolation> check_regularity(const ChoiceTable& table, double tol = 1e-9);

/// Total purchase probability dropped when the offer set grew.
struct DemandMonotonicityViolation {
  Assortment smaller_set;
  Assortment larger_set;
  double sum_small = 0.0;
  double sum_large = 0.0;
};

/// Pairs S ⊂ S' (both present) whose member-share totals decrease.
std::vector<DemandMonotonicityViolation> check_demand_monotonicity(const ChoiceTable& table,
                                                                   double tol = 1e-9);

/// (x, y) with a witness S: removing y from S strictly lowers x's probability.
struct PrecedenceEdge {
  int from = 0;  // x
  int to = 0;    // y
  Assortment witness;
  double p_without = 0.0;
  double p_with = 0.0;
};

struct PrecedenceRelation {
  std::vector<PrecedenceEdge> edges;
  /// Ordered pairs that could not be decided because a required row (S or
  /// S minus y) is missing from the table.
  long pairs_skipped = 0;

  bool has_edge(int from, int to) const;
};

PrecedenceRelation ram_relation(const ChoiceTable& table, double tol = 1e-9);

enum class RamStatus { InRam, NotInRam, Undetermined };

struct RamResult {
  RamStatus status = RamStatus::Undetermined;
  std::vector<int> cycle;  // witness when NotInRam, e.g. {1, 2, 3}
  std::string detail;
};

/// Representable by a random attention model iff the precedence relation is
/// acyclic. Requires a complete table; incomplete input is Undetermined.
RamResult ram_membership(const ChoiceTable& table);

struct MembershipOptions {
  int max_universe = 5;  // column count grows factorially
  double fit_tol = 1e-7;
};

/// Outcome of the exact membership test. InGsp carries a witness model that
/// reproduces the table; NotInGsp carries a Farkas certificate for the
/// exact-fit system (one equality per (x, S) pair including x = 0, then the
/// unit-mass row).
struct MembershipVerdict {
  enum class Status { InGsp, NotInGsp, Unknown };
  Status status = Status::Unknown;
  std::optional<GspModel> model;
  std::optional<Eigen::VectorXd> certificate;
  std::string detail;
};

/// Decides whether any consumer-type mixture reproduces the complete table,
/// via the feasibility LP over behavior-deduplicated type columns.
MembershipVerdict gsp_membership(const ChoiceTable& table, const MembershipOptions& options = {});

}  // namespace gsp::analysis
