#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "gsp/types.hpp"

namespace gsp::estimation {

/// One observed assortment with the empirical fraction choosing each member
/// (and, implicitly, the no-choice remainder).
struct Observation {
  Assortment assortment;
  std::vector<double> shares;  // aligned with assortment.members()
  double no_choice = 0.0;
  std::optional<long> sample_size;

  friend bool operator==(const Observation&, const Observation&) = default;
};

/// Aggregate choice shares over a family of distinct assortments. Fractions
/// must sum to one per observation within 1e-6.
class ChoiceDataset {
 public:
  ChoiceDataset(int universe_size, std::vector<Observation> observations);

  int universe_size() const { return universe_size_; }
  const std::vector<Observation>& observations() const { return observations_; }

  /// The stacked share vector, one entry per (member, assortment) row in
  /// observation order (no-choice rows are implied and excluded).
  Eigen::VectorXd share_vector() const;

  friend bool operator==(const ChoiceDataset&, const ChoiceDataset&) = default;

 private:
  int universe_size_ = 0;
  std::vector<Observation> observations_;
};

struct DesignColumn {
  ConsumerType representative;  // first enumeration-order member of the class
  int multiplicity = 1;         // how many supplied types share this behavior
  bool rational = false;
};

/// The 0-1 matrix mapping consumer types to (alternative, assortment) choice
/// indicators. Rows follow dataset observation order, ascending alternative
/// within each block; behavior-duplicate type columns are merged.
struct DesignMatrix {
  Eigen::MatrixXd matrix;
  struct RowKey {
    int alternative = 0;
    std::size_t observation = 0;
  };
  std::vector<RowKey> row_keys;
  std::vector<DesignColumn> columns;
};

/// With merge_duplicates (the default, and what fit() uses), types whose
/// choice vectors coincide across all observed rows share one column.
DesignMatrix build_design_matrix(const std::vector<ConsumerType>& types,
                                 const ChoiceDataset& dataset, bool merge_duplicates = true);

/// Candidate-type universe for a fit: every type over 1..N, every type up to
/// a sequence-length cap, or an explicit list.
struct FitConfig {
  int max_atoms = 8;                 // hard sparsity budget (the l0 penalty in kind)
  double irrational_penalty = 0.0;   // selection-score bias against irrational columns
  double complexity_penalty = 0.0;   // the per-atom cost reported by loss()
  double tol = 1e-7;                 // residual target
  std::optional<int> max_seq_len;    // Capped universe
  std::optional<std::vector<ConsumerType>> custom_types;  // Custom universe
  int universe_cap = 6;              // largest N for which the full universe is enumerated
};

struct FitResult {
  GspModel model;
  double residual_norm = 0.0;
  std::vector<double> row_residuals;  // fitted minus observed, per design row
  double irrational_mass = 0.0;
  long iterations = 0;
};

/// Fits a sparse model to the dataset: simplex-constrained least squares over
/// the design matrix, with irrational columns handicapped by
/// irrational_penalty at selection time and weights below 1e-6 pruned from
/// the returned model. Deterministic for a fixed dataset and config.
FitResult fit(const ChoiceDataset& dataset, const FitConfig& config);

/// |observed - model shares|_2 + complexity_penalty * support +
/// irrational_penalty * irrational support.
double loss(const GspModel& model, const ChoiceDataset& dataset, const FitConfig& config = {});

}  // namespace gsp::estimation
