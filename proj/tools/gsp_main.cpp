// gsp: evaluate, diagnose, fit, and optimize generalized stochastic
// preference models over JSON files.
//
// Conventions: results go to stdout as JSON (the same bytes --out writes);
// human-readable tables and progress go to stderr. Exit codes: 0 success,
// 2 invalid input, 3 quality gate failed.

#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>
#include <string>

#include "gsp/analysis.hpp"
#include "gsp/assortment.hpp"
#include "gsp/estimation.hpp"
#include "gsp/examples.hpp"
#include "gsp/io.hpp"
#include "gsp/types.hpp"

namespace {

using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitQuality = 3;

std::optional<int> universe_cap_override() {
  const char* raw = std::getenv("GSP_UNIVERSE_CAP");
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  try {
    const int cap = std::stoi(raw);
    if (cap < 1) throw std::invalid_argument(raw);
    return cap;
  } catch (const std::exception&) {
    throw gsp::ValidationError("GSP_UNIVERSE_CAP must be a positive integer");
  }
}

/// Model files may be plain model JSON or an example fixture carrying a
/// reference_model.
gsp::GspModel load_model_file(const std::string& path) {
  const std::string text = gsp::io::read_file(path);
  const auto probe = ordered_json::parse(text, nullptr, false);
  if (probe.is_object() && probe.contains("reference_model")) {
    const auto example = gsp::examples::parse_example(text);
    if (!example.reference_model)
      throw gsp::ValidationError(path + ": fixture has no reference model");
    return *example.reference_model;
  }
  return gsp::io::parse_model(text);
}

/// Dataset files may be plain dataset JSON or an example fixture.
gsp::estimation::ChoiceDataset load_dataset_file(const std::string& path) {
  const std::string text = gsp::io::read_file(path);
  const auto probe = ordered_json::parse(text, nullptr, false);
  if (probe.is_object() && probe.contains("dataset"))
    return gsp::examples::parse_example(text).dataset;
  return gsp::io::parse_dataset(text);
}

/// Table files may be plain table JSON or an example fixture (its reference
/// table when present, otherwise its dataset read as a table).
gsp::ChoiceTable load_table_file(const std::string& path) {
  const std::string text = gsp::io::read_file(path);
  const auto probe = ordered_json::parse(text, nullptr, false);
  if (probe.is_object() && (probe.contains("reference_table") || probe.contains("name"))) {
    const auto example = gsp::examples::parse_example(text);
    if (example.reference_table) return *example.reference_table;
    std::vector<gsp::ChoiceTable::Row> rows;
    for (const auto& obs : example.dataset.observations())
      rows.push_back({obs.assortment, obs.shares, obs.no_choice});
    return gsp::ChoiceTable(example.dataset.universe_size(), std::move(rows));
  }
  return gsp::io::parse_table(text);
}

void emit(const std::string& json_text, const std::string& out_path) {
  std::cout << json_text;
  if (!out_path.empty()) gsp::io::write_file(out_path, json_text);
}

std::string format_probability(double p) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.2f", p);
  return buffer;
}

/// Paper-style layout: one row per assortment, one column per alternative
/// plus the no-choice column, "-" where an alternative is not offered.
void print_table(const gsp::ChoiceTable& table, std::ostream& os) {
  const int n = table.universe_size();
  std::size_t label_width = 1;
  for (const auto& row : table.rows())
    label_width = std::max(label_width, row.assortment.to_string().size());

  os << "S" << std::string(label_width, ' ');
  os << "P(0,S)";
  for (int x = 1; x <= n; ++x) os << "  P(" << x << ",S)";
  os << "\n";
  for (const auto& row : table.rows()) {
    const std::string label = row.assortment.to_string();
    os << label << std::string(label_width + 1 - label.size(), ' ');
    os << "  " << format_probability(row.no_choice);
    for (int x = 1; x <= n; ++x) {
      if (row.assortment.contains(x))
        os << "    " << format_probability(table.prob(x, row.assortment));
      else
        os << "       -";
    }
    os << "\n";
  }
}

int run_eval(const std::string& model_path, const std::string& assortments_path, int all_subsets,
             const std::string& out_path) {
  const gsp::GspModel model = load_model_file(model_path);
  std::vector<gsp::Assortment> assortments;
  if (all_subsets > 0) {
    if (all_subsets > 20) throw gsp::ValidationError("--all-subsets is capped at 20");
    assortments = gsp::all_assortments(all_subsets);
  } else {
    assortments = gsp::io::parse_assortment_list(gsp::io::read_file(assortments_path));
  }
  const gsp::ChoiceTable table = gsp::choice_table(model, assortments);
  print_table(table, std::cerr);
  emit(gsp::io::serialize(table), out_path);
  return kExitOk;
}

int run_fit(const std::string& data_path, gsp::estimation::FitConfig config, bool require_exact,
            const std::string& out_path) {
  const auto dataset = load_dataset_file(data_path);
  if (const auto cap = universe_cap_override()) config.universe_cap = *cap;
  const auto result = gsp::estimation::fit(dataset, config);

  std::cerr << "residual          " << result.residual_norm << "\n"
            << "support size      " << result.model.support_size() << "\n"
            << "irrational mass   " << result.irrational_mass << "\n"
            << "iterations        " << result.iterations << "\n";

  ordered_json j = ordered_json::parse(gsp::io::serialize(result.model));
  ordered_json diagnostics;
  diagnostics["residual"] = result.residual_norm;
  diagnostics["irrational_mass"] = result.irrational_mass;
  diagnostics["iterations"] = result.iterations;
  diagnostics["support_size"] = result.model.support_size();
  j["diagnostics"] = std::move(diagnostics);
  emit(j.dump(2) + "\n", out_path);

  if (require_exact && result.residual_norm > config.tol) {
    std::cerr << "residual " << result.residual_norm << " exceeds --tol " << config.tol
              << " (--require-exact)\n";
    return kExitQuality;
  }
  return kExitOk;
}

ordered_json assortment_to_json(const gsp::Assortment& s) { return ordered_json(s.members()); }

int run_check(const std::string& table_path, bool regularity, bool monotone, bool ram,
              bool membership, const std::string& out_path) {
  const gsp::ChoiceTable table = load_table_file(table_path);
  const bool all = !(regularity || monotone || ram || membership);

  ordered_json j;
  j["universe_size"] = table.universe_size();
  ordered_json checks = ordered_json::object();

  if (regularity || all) {
    const auto violations = gsp::analysis::check_regularity(table);
    ordered_json list = ordered_json::array();
    for (const auto& v : violations) {
      ordered_json item;
      item["alternative"] = v.alternative;
      item["smaller_set"] = assortment_to_json(v.smaller_set);
      item["larger_set"] = assortment_to_json(v.larger_set);
      item["p_small"] = v.p_small;
      item["p_large"] = v.p_large;
      list.push_back(std::move(item));
    }
    checks["regularity"] = ordered_json{{"violations", std::move(list)}};
    std::cerr << "regularity: " << violations.size() << " violation(s)\n";
    for (const auto& v : violations)
      std::cerr << "  alternative " << v.alternative << ": " << format_probability(v.p_small)
                << " on " << v.smaller_set.to_string() << " -> " << format_probability(v.p_large)
                << " on " << v.larger_set.to_string() << "\n";
  }
  if (monotone || all) {
    const auto violations = gsp::analysis::check_demand_monotonicity(table);
    ordered_json list = ordered_json::array();
    for (const auto& v : violations) {
      ordered_json item;
      item["smaller_set"] = assortment_to_json(v.smaller_set);
      item["larger_set"] = assortment_to_json(v.larger_set);
      item["sum_small"] = v.sum_small;
      item["sum_large"] = v.sum_large;
      list.push_back(std::move(item));
    }
    checks["demand_monotonicity"] = ordered_json{{"violations", std::move(list)}};
    std::cerr << "demand monotonicity: " << violations.size() << " violation(s)\n";
  }
  if (ram || all) {
    const auto result = gsp::analysis::ram_membership(table);
    ordered_json item;
    switch (result.status) {
      case gsp::analysis::RamStatus::InRam: item["status"] = "in_ram"; break;
      case gsp::analysis::RamStatus::NotInRam: item["status"] = "not_in_ram"; break;
      case gsp::analysis::RamStatus::Undetermined: item["status"] = "undetermined"; break;
    }
    item["cycle"] = ordered_json(result.cycle);
    item["detail"] = result.detail;
    checks["ram"] = std::move(item);
    std::cerr << "ram: " << checks["ram"]["status"].get<std::string>();
    if (!result.cycle.empty()) {
      std::cerr << " (cycle:";
      for (int v : result.cycle) std::cerr << " " << v;
      std::cerr << ")";
    }
    std::cerr << "\n";
  }
  if (membership || all) {
    gsp::analysis::MembershipOptions options;
    if (const auto cap = universe_cap_override()) options.max_universe = *cap;
    const auto verdict = gsp::analysis::gsp_membership(table, options);
    ordered_json item;
    switch (verdict.status) {
      case gsp::analysis::MembershipVerdict::Status::InGsp: item["status"] = "in_gsp"; break;
      case gsp::analysis::MembershipVerdict::Status::NotInGsp:
        item["status"] = "not_in_gsp";
        break;
      case gsp::analysis::MembershipVerdict::Status::Unknown:
        item["status"] = "undetermined";
        break;
    }
    item["detail"] = verdict.detail;
    if (verdict.model)
      item["model"] = ordered_json::parse(gsp::io::serialize(*verdict.model));
    if (verdict.certificate) {
      ordered_json cert = ordered_json::array();
      for (Eigen::Index i = 0; i < verdict.certificate->size(); ++i)
        cert.push_back((*verdict.certificate)(i));
      item["certificate"] = std::move(cert);
    }
    checks["gsp_membership"] = std::move(item);
    std::cerr << "gsp membership: " << checks["gsp_membership"]["status"].get<std::string>()
              << "\n";
    if (verdict.certificate) {
      std::cerr << "  certificate:";
      for (Eigen::Index i = 0; i < verdict.certificate->size(); ++i)
        std::cerr << " " << (*verdict.certificate)(i);
      std::cerr << "\n";
    }
  }

  j["checks"] = std::move(checks);
  emit(j.dump(2) + "\n", out_path);
  return kExitOk;
}

ordered_json solution_to_json(const gsp::assortment::AssortmentSolution& solution) {
  ordered_json j;
  j["assortment"] = assortment_to_json(solution.assortment);
  j["expected_revenue"] = solution.expected_revenue;
  j["method"] = solution.method == gsp::assortment::Method::Exact ? "exact" : "revenue-ordered";
  j["candidates_evaluated"] = solution.candidates_evaluated;
  return j;
}

int run_assort(const std::string& model_path, const std::string& revenues_path,
               const std::string& method, const std::string& out_path) {
  const gsp::GspModel model = load_model_file(model_path);
  const auto revenues = gsp::io::parse_revenues(gsp::io::read_file(revenues_path));
  if (revenues.universe_size() < model.universe_size())
    throw gsp::ValidationError("revenues cover only " +
                               std::to_string(revenues.universe_size()) + " of " +
                               std::to_string(model.universe_size()) + " alternatives");

  ordered_json j;
  if (method == "exact") {
    const auto best = gsp::assortment::optimal_assortment(model, revenues);
    std::cerr << "exact: " << best.assortment.to_string() << " revenue "
              << best.expected_revenue << "\n";
    j["exact"] = solution_to_json(best);
  } else if (method == "revenue-ordered") {
    const auto best = gsp::assortment::revenue_ordered(model, revenues);
    std::cerr << "revenue-ordered: " << best.assortment.to_string() << " revenue "
              << best.expected_revenue << "\n";
    j["revenue_ordered"] = solution_to_json(best);
  } else {  // both
    const auto report = gsp::assortment::ratio_report(model, revenues);
    std::cerr << "exact:           " << report.optimal.assortment.to_string() << " revenue "
              << report.optimal.expected_revenue << "\n"
              << "revenue-ordered: " << report.heuristic.assortment.to_string() << " revenue "
              << report.heuristic.expected_revenue << "\n"
              << "ratio " << report.ratio << " (guarantee r1/rk = " << report.bound << ")\n";
    j["exact"] = solution_to_json(report.optimal);
    j["revenue_ordered"] = solution_to_json(report.heuristic);
    j["ratio"] = report.ratio;
    j["bound"] = report.bound;
  }
  emit(j.dump(2) + "\n", out_path);
  return kExitOk;
}

int run_examples(bool list, const std::string& export_dir, bool verify) {
  if (verify) {
    const auto lines = gsp::examples::verify_all();
    bool all_passed = true;
    for (const auto& line : lines) {
      std::cout << (line.passed ? "PASS " : "FAIL ") << line.example << ": " << line.detail
                << "\n";
      all_passed = all_passed && line.passed;
    }
    std::cout << (all_passed ? "all examples verified" : "verification failed") << "\n";
    return all_passed ? kExitOk : kExitQuality;
  }
  if (!export_dir.empty()) {
    for (const auto& name : gsp::examples::example_names()) {
      const auto example = gsp::examples::load_example(name);
      gsp::io::write_file(export_dir + "/" + name + ".json",
                          gsp::examples::serialize_example(example));
      std::cerr << "wrote " << export_dir << "/" << name << ".json\n";
    }
    return kExitOk;
  }
  (void)list;  // listing is also the default action
  for (const auto& name : gsp::examples::example_names()) std::cout << name << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generalized stochastic preference toolkit"};
  app.require_subcommand(1);

  std::string eval_model, eval_assortments, eval_out;
  int eval_all_subsets = 0;
  auto* eval = app.add_subcommand("eval", "evaluate a model into a choice table");
  eval->add_option("--model", eval_model, "model JSON file")->required();
  auto* eval_file = eval->add_option("--assortments", eval_assortments,
                                     "JSON array of assortments, e.g. [[1,2],[1,2,3]]");
  auto* eval_all = eval->add_option("--all-subsets", eval_all_subsets,
                                    "evaluate every non-empty subset of {1..N}");
  eval_file->excludes(eval_all);
  eval->add_option("--out", eval_out, "also write the table JSON here");

  std::string fit_data, fit_out;
  gsp::estimation::FitConfig fit_config;
  bool fit_require_exact = false;
  int fit_cap_seq_len = 0;
  auto* fit = app.add_subcommand("fit", "fit a sparse model to observed shares");
  fit->add_option("--data", fit_data, "dataset JSON file")->required();
  fit->add_option("--max-atoms", fit_config.max_atoms, "atom budget")->required();
  fit->add_option("--irrational-penalty", fit_config.irrational_penalty,
                  "selection bias against irrational types");
  fit->add_option("--cap-seq-len", fit_cap_seq_len, "cap candidate sequence length");
  fit->add_option("--tol", fit_config.tol, "residual target");
  fit->add_flag("--require-exact", fit_require_exact, "exit 3 when the residual exceeds --tol");
  fit->add_option("--out", fit_out, "also write the fitted model JSON here");

  std::string check_table, check_out;
  bool check_regularity = false, check_monotone = false, check_ram = false, check_gsp = false;
  auto* check = app.add_subcommand("check", "structural diagnostics on a choice table");
  check->add_option("--table", check_table, "table JSON file (or example fixture)")->required();
  check->add_flag("--regularity", check_regularity, "report regularity violations");
  check->add_flag("--monotone", check_monotone, "report total-demand monotonicity violations");
  check->add_flag("--ram", check_ram, "attention-model representability (cycle test)");
  check->add_flag("--gsp-membership", check_gsp, "exact membership with certificates");
  check->add_option("--out", check_out, "also write the verdict JSON here");

  std::string assort_model, assort_revenues, assort_method = "both", assort_out;
  auto* assort = app.add_subcommand("assort", "assortment optimization under a model");
  assort->add_option("--model", assort_model, "model JSON file")->required();
  assort->add_option("--revenues", assort_revenues, "revenue JSON file")->required();
  assort->add_option("--method", assort_method, "exact | revenue-ordered | both")
      ->check(CLI::IsMember({"exact", "revenue-ordered", "both"}));
  assort->add_option("--out", assort_out, "also write the result JSON here");

  bool examples_list = false, examples_verify = false;
  std::string examples_export;
  auto* examples = app.add_subcommand("examples", "built-in worked examples");
  auto* opt_list = examples->add_flag("--list", examples_list, "list example names");
  auto* opt_export = examples->add_option("--export", examples_export, "write fixtures to DIR");
  auto* opt_verify =
      examples->add_flag("--verify", examples_verify, "re-derive every stored number");
  opt_list->excludes(opt_export)->excludes(opt_verify);
  opt_export->excludes(opt_verify);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*eval) {
      if (eval_assortments.empty() && eval_all_subsets <= 0)
        throw gsp::ValidationError("eval needs --assortments or --all-subsets");
      return run_eval(eval_model, eval_assortments, eval_all_subsets, eval_out);
    }
    if (*fit) {
      if (fit_cap_seq_len > 0) fit_config.max_seq_len = fit_cap_seq_len;
      return run_fit(fit_data, fit_config, fit_require_exact, fit_out);
    }
    if (*check)
      return run_check(check_table, check_regularity, check_monotone, check_ram, check_gsp,
                       check_out);
    if (*assort) return run_assort(assort_model, assort_revenues, assort_method, assort_out);
    if (*examples) return run_examples(examples_list, examples_export, examples_verify);
  } catch (const gsp::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return kExitOk;
}
