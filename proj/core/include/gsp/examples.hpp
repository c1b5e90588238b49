#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gsp/estimation.hpp"
#include "gsp/lp.hpp"
#include "gsp/types.hpp"

namespace gsp::examples {

/// A built-in worked example: observed shares, optionally the reference
/// mixture that reproduces them and/or the full reference table.
struct Example {
  std::string name;
  std::string notes;
  estimation::ChoiceDataset dataset;
  std::optional<GspModel> reference_model;
  std::optional<ChoiceTable> reference_table;
  /// Expected total weight on irrational atoms, when a model is present.
  std::optional<double> irrational_mass;
};

/// The six built-in names: cameras, economist, microwaves, mcfadden, herne,
/// counterexample.
const std::vector<std::string>& example_names();

Example load_example(const std::string& name);

/// The aggregated 12-variable exact-fit system behind the counterexample's
/// forced pair choices (rows: P(1,{1,2}) = 1, P(2,{2,3}) = 1, P(3,{1,3}) = 1,
/// unit mass), together with the hand-checkable infeasibility certificate
/// (-1, -1, -1, 2).
struct ReducedInfeasibilitySystem {
  solver::LinearFeasibilityProblem problem;
  Eigen::VectorXd reference_certificate;
  std::vector<ConsumerType> column_types;
};

ReducedInfeasibilitySystem counterexample_reduced_system();

/// Fixture-file form of an example:
/// { "name", "notes", "dataset", "reference_model", "reference_table" }
/// with the dataset/model/table sub-objects in their io formats and null for
/// absent parts.
std::string serialize_example(const Example& example);
Example parse_example(const std::string& json_text);

struct VerifyLine {
  std::string example;
  bool passed = false;
  std::string detail;
};

/// Re-derives each example's stored numbers: reference models must reproduce
/// their datasets to 1e-12 (and carry the expected irrational mass); the
/// counterexample must come out NotInGsp with a valid certificate, and the
/// reference certificate must validate on the reduced system.
std::vector<VerifyLine> verify_all();

}  // namespace gsp::examples
