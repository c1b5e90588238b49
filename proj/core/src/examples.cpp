#include "gsp/examples.hpp"

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>
#include <sstream>

#include "gsp/analysis.hpp"
#include "gsp/io.hpp"

namespace gsp::examples {

namespace {

using estimation::ChoiceDataset;
using estimation::Observation;

Observation obs(std::vector<int> assortment, std::vector<double> shares, double no_choice) {
  Observation o;
  o.assortment = Assortment(std::move(assortment));
  o.shares = std::move(shares);
  o.no_choice = no_choice;
  return o;
}

ChoiceTable::Row row(std::vector<int> assortment, std::vector<double> shares, double no_choice) {
  ChoiceTable::Row r;
  r.assortment = Assortment(std::move(assortment));
  r.shares = std::move(shares);
  r.no_choice = no_choice;
  return r;
}

Atom atom(std::vector<int> sequence, int position, double weight) {
  return Atom{ConsumerType{std::move(sequence), position}, weight};
}

Example make_cameras() {
  return Example{
      "cameras",
      "Two-condition camera experiment: with only cameras 1 and 2 offered the split is "
      "50/50; adding the premium camera 3 lifts camera 2 to 0.57.",
      ChoiceDataset(3, {obs({1, 2}, {0.50, 0.50}, 0.0),
                        obs({1, 2, 3}, {0.22, 0.57, 0.21}, 0.0)}),
      GspModel(3, {atom({1, 3, 2}, 1, 0.22), atom({2, 3, 1}, 1, 0.29),
                   atom({3, 2, 1}, 1, 0.21), atom({3, 2, 1}, 2, 0.28)}),
      std::nullopt,
      0.28,
  };
}

Example make_economist() {
  return Example{
      "economist",
      "Subscription experiment; options are 1 online-only, 2 print-only (a dominated decoy), "
      "3 print-and-online bundle. Adding option 2 moves most demand from 1 to 3.",
      ChoiceDataset(3, {obs({1, 3}, {0.68, 0.32}, 0.0),
                        obs({1, 2, 3}, {0.16, 0.0, 0.84}, 0.0)}),
      GspModel(3, {atom({1, 2, 3}, 1, 0.16), atom({3, 2, 1}, 1, 0.16),
                   atom({1, 3, 2}, 2, 0.16), atom({2, 3, 1}, 2, 0.52)}),
      std::nullopt,
      0.68,
  };
}

Example make_microwaves() {
  return Example{
      "microwaves",
      "Two-condition microwave experiment: adding the premium model 3 lifts the mid-priced "
      "model 2 from 0.43 to 0.60.",
      ChoiceDataset(3, {obs({1, 2}, {0.57, 0.43}, 0.0),
                        obs({1, 2, 3}, {0.27, 0.60, 0.13}, 0.0)}),
      GspModel(3, {atom({1, 2, 3}, 1, 0.27), atom({2, 1, 3}, 1, 0.43),
                   atom({3, 1, 2}, 1, 0.13), atom({3, 2, 1}, 2, 0.17)}),
      std::nullopt,
      0.17,
  };
}

Example make_mcfadden() {
  return Example{
      "mcfadden",
      "Complete three-alternative table with a no-choice share; satisfies regularity yet no "
      "ranking mixture reproduces it. The 11-type reference mixture carries 0.20 irrational "
      "mass.",
      ChoiceDataset(3, {obs({1}, {0.5}, 0.5), obs({2}, {0.5}, 0.5), obs({3}, {0.5}, 0.5),
                        obs({1, 2}, {0.3, 0.3}, 0.4), obs({1, 3}, {0.3, 0.3}, 0.4),
                        obs({2, 3}, {0.3, 0.3}, 0.4),
                        obs({1, 2, 3}, {0.25, 0.25, 0.25}, 0.25)}),
      GspModel(3, {atom({1}, 0, 0.25), atom({1}, 1, 0.05), atom({3, 2}, 1, 0.05),
                   atom({1, 2, 3}, 1, 0.1), atom({1, 3, 2}, 1, 0.05), atom({2, 1, 3}, 1, 0.05),
                   atom({2, 3, 1}, 1, 0.15), atom({3, 1, 2}, 1, 0.1), atom({1, 2}, 2, 0.05),
                   atom({2, 3}, 2, 0.1), atom({3, 1}, 2, 0.05)}),
      ChoiceTable(3, {row({1}, {0.5}, 0.5), row({2}, {0.5}, 0.5), row({3}, {0.5}, 0.5),
                      row({1, 2}, {0.3, 0.3}, 0.4), row({1, 3}, {0.3, 0.3}, 0.4),
                      row({2, 3}, {0.3, 0.3}, 0.4), row({1, 2, 3}, {0.25, 0.25, 0.25}, 0.25)}),
      0.20,
  };
}

Example make_herne() {
  return Example{
      "herne",
      "Economic-union choice experiment; unions T, C and the decoy D map to ids 1, 2, 3. "
      "Adding D (dominated by T) lifts T from 0.53 to 0.63.",
      ChoiceDataset(3, {obs({1, 2}, {0.53, 0.47}, 0.0),
                        obs({1, 2, 3}, {0.63, 0.37, 0.00}, 0.0)}),
      GspModel(3, {atom({1, 2, 3}, 1, 0.53), atom({2, 1, 3}, 1, 0.37),
                   atom({3, 1, 2}, 2, 0.10)}),
      std::nullopt,
      0.10,
  };
}

Example make_counterexample() {
  return Example{
      "counterexample",
      "Deterministic cyclic table: 1 beats 2, 2 beats 3, 3 beats 1 in the pairs, and 1 wins "
      "the triple. Total demand never drops when the offer set grows, yet no consumer-type "
      "mixture reproduces the table.",
      ChoiceDataset(3, {obs({1}, {1.0}, 0.0), obs({2}, {1.0}, 0.0), obs({3}, {1.0}, 0.0),
                        obs({1, 2}, {1.0, 0.0}, 0.0), obs({1, 3}, {0.0, 1.0}, 0.0),
                        obs({2, 3}, {1.0, 0.0}, 0.0), obs({1, 2, 3}, {1.0, 0.0, 0.0}, 0.0)}),
      std::nullopt,
      ChoiceTable(3, {row({1}, {1.0}, 0.0), row({2}, {1.0}, 0.0), row({3}, {1.0}, 0.0),
                      row({1, 2}, {1.0, 0.0}, 0.0), row({1, 3}, {0.0, 1.0}, 0.0),
                      row({2, 3}, {1.0, 0.0}, 0.0), row({1, 2, 3}, {1.0, 0.0, 0.0}, 0.0)}),
      std::nullopt,
  };
}

}  // namespace

const std::vector<std::string>& example_names() {
  static const std::vector<std::string> names = {"cameras",  "economist", "microwaves",
                                                 "mcfadden", "herne",     "counterexample"};
  return names;
}

Example load_example(const std::string& name) {
  if (name == "cameras") return make_cameras();
  if (name == "economist") return make_economist();
  if (name == "microwaves") return make_microwaves();
  if (name == "mcfadden") return make_mcfadden();
  if (name == "herne") return make_herne();
  if (name == "counterexample") return make_counterexample();
  throw ValidationError("unknown example \"" + name + "\"; known: cameras, economist, "
                        "microwaves, mcfadden, herne, counterexample");
}

ReducedInfeasibilitySystem counterexample_reduced_system() {
  ReducedInfeasibilitySystem system;
  // Length-3 sequences with positions 1 and 2, in the order matching the
  // matrix below.
  const std::vector<std::pair<std::vector<int>, int>> types = {
      {{1, 2, 3}, 1}, {{1, 3, 2}, 1}, {{3, 1, 2}, 1}, {{2, 3, 1}, 1},
      {{2, 1, 3}, 1}, {{3, 2, 1}, 1}, {{2, 1, 3}, 2}, {{2, 3, 1}, 2},
      {{3, 2, 1}, 2}, {{3, 1, 2}, 2}, {{1, 3, 2}, 2}, {{1, 2, 3}, 2}};
  for (const auto& [seq, pos] : types) system.column_types.push_back(ConsumerType{seq, pos});

  // Rows: the three forced choices P(1,{1,2}) = P(2,{2,3}) = P(3,{1,3}) = 1,
  // then the unit-mass row. Entry (r, c) = 1 iff column c's type makes the
  // row's choice; derivable from choose() on each pair.
  system.problem.matrix.resize(4, 12);
  system.problem.matrix << 1, 1, 1, 0, 0, 0, 1, 1, 1, 0, 0, 0,  //
      1, 0, 0, 1, 1, 0, 0, 0, 1, 1, 1, 0,                       //
      0, 0, 1, 1, 0, 1, 1, 0, 0, 0, 1, 1,                       //
      1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1;
  system.problem.rhs.resize(4);
  system.problem.rhs << 1, 1, 1, 1;
  system.reference_certificate.resize(4);
  system.reference_certificate << -1, -1, -1, 2;
  return system;
}

std::string serialize_example(const Example& example) {
  nlohmann::ordered_json j;
  j["name"] = example.name;
  j["notes"] = example.notes;
  j["dataset"] = nlohmann::ordered_json::parse(io::serialize(example.dataset));
  j["reference_model"] = example.reference_model
                             ? nlohmann::ordered_json::parse(io::serialize(*example.reference_model))
                             : nlohmann::ordered_json(nullptr);
  j["reference_table"] = example.reference_table
                             ? nlohmann::ordered_json::parse(io::serialize(*example.reference_table))
                             : nlohmann::ordered_json(nullptr);
  return j.dump(2) + "\n";
}

Example parse_example(const std::string& json_text) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("example: invalid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("name") || !j.contains("dataset"))
    throw ValidationError("example: expected an object with name and dataset");
  std::optional<GspModel> model;
  if (j.contains("reference_model") && !j.at("reference_model").is_null())
    model = io::parse_model(j.at("reference_model").dump());
  std::optional<ChoiceTable> table;
  if (j.contains("reference_table") && !j.at("reference_table").is_null())
    table = io::parse_table(j.at("reference_table").dump());
  return Example{j.at("name").get<std::string>(),
                 j.value("notes", std::string{}),
                 io::parse_dataset(j.at("dataset").dump()),
                 std::move(model),
                 std::move(table),
                 std::nullopt};
}

std::vector<VerifyLine> verify_all() {
  std::vector<VerifyLine> lines;
  for (const std::string& name : example_names()) {
    const Example e = load_example(name);
    VerifyLine line;
    line.example = name;
    std::ostringstream detail;

    if (e.reference_model) {
      double worst = 0.0;
      for (const auto& o : e.dataset.observations()) {
        for (std::size_t k = 0; k < o.assortment.size(); ++k) {
          const double p =
              choice_probability(*e.reference_model, o.assortment.members()[k], o.assortment);
          worst = std::max(worst, std::abs(p - o.shares[k]));
        }
        worst = std::max(worst, std::abs(choice_probability(*e.reference_model, kNoChoice,
                                                            o.assortment) -
                                         o.no_choice));
      }
      bool ok = worst <= 1e-12;
      detail << "max share deviation " << worst;
      if (e.irrational_mass) {
        const double mass = e.reference_model->irrational_mass();
        const bool mass_ok = std::abs(mass - *e.irrational_mass) <= 1e-12;
        ok = ok && mass_ok;
        detail << "; irrational mass " << mass << " (expected " << *e.irrational_mass << ")";
      }
      if (e.reference_table) {
        double table_dev = 0.0;
        for (const auto& r : e.reference_table->rows()) {
          for (std::size_t k = 0; k < r.assortment.size(); ++k)
            table_dev = std::max(
                table_dev, std::abs(choice_probability(*e.reference_model,
                                                       r.assortment.members()[k], r.assortment) -
                                    r.shares[k]));
        }
        ok = ok && table_dev <= 1e-12;
        detail << "; max table deviation " << table_dev;
      }
      line.passed = ok;
    } else {
      // The counterexample verifies as a non-member with certificates.
      const analysis::MembershipVerdict verdict = analysis::gsp_membership(*e.reference_table);
      const bool not_member = verdict.status == analysis::MembershipVerdict::Status::NotInGsp;
      const bool cert_ok = not_member && verdict.certificate.has_value();
      const ReducedInfeasibilitySystem reduced = counterexample_reduced_system();
      const bool reduced_infeasible =
          solver::solve_feasibility(reduced.problem).status == solver::FeasStatus::Infeasible;
      const bool reference_cert_ok =
          solver::certificate_is_valid(reduced.problem, reduced.reference_certificate);
      line.passed = not_member && cert_ok && reduced_infeasible && reference_cert_ok;
      detail << "membership " << (not_member ? "NotInGsp" : "unexpected") << "; reduced system "
             << (reduced_infeasible ? "infeasible" : "unexpectedly feasible")
             << "; reference certificate "
             << (reference_cert_ok ? "validates" : "does not validate");
    }
    line.detail = detail.str();
    lines.push_back(std::move(line));
  }
  return lines;
}

}  // namespace gsp::examples
