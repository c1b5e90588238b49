#include "gsp/io.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

namespace gsp::io {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json parse_json(const std::string& text, const char* what) {
  try {
    return ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string(what) + ": invalid JSON: " + e.what());
  }
}

const ordered_json& require(const ordered_json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) throw ValidationError(where + ": missing field \"" + key + "\"");
  return *it;
}

int require_int(const ordered_json& j, const char* key, const std::string& where) {
  const auto& v = require(j, key, where);
  if (!v.is_number_integer())
    throw ValidationError(where + ": field \"" + key + "\" must be an integer");
  return v.get<int>();
}

double require_number(const ordered_json& j, const char* key, const std::string& where) {
  const auto& v = require(j, key, where);
  if (!v.is_number()) throw ValidationError(where + ": field \"" + key + "\" must be a number");
  return v.get<double>();
}

std::vector<int> require_int_array(const ordered_json& v, const std::string& where) {
  if (!v.is_array()) throw ValidationError(where + ": expected an array of integers");
  std::vector<int> out;
  out.reserve(v.size());
  for (const auto& entry : v) {
    if (!entry.is_number_integer())
      throw ValidationError(where + ": expected an array of integers");
    out.push_back(entry.get<int>());
  }
  return out;
}

int parse_id_key(const std::string& key, const std::string& where) {
  try {
    std::size_t used = 0;
    const int id = std::stoi(key, &used);
    if (used != key.size() || id < 0) throw std::invalid_argument(key);
    return id;
  } catch (const std::exception&) {
    throw ValidationError(where + ": share key \"" + key + "\" is not an alternative id");
  }
}

// Shared by table and dataset rows: reads { "assortment": [...], "shares": {...} }.
template <typename Row>
Row parse_row(const ordered_json& j, std::size_t index, const char* what) {
  const std::string where = std::string(what) + " row " + std::to_string(index);
  Row row;
  row.assortment = Assortment(require_int_array(require(j, "assortment", where), where));
  const auto& shares = require(j, "shares", where);
  if (!shares.is_object()) throw ValidationError(where + ": \"shares\" must be an object");

  bool saw_no_choice = false;
  std::vector<double> by_id(row.assortment.size(), 0.0);
  std::vector<bool> seen(row.assortment.size(), false);
  for (const auto& [key, value] : shares.items()) {
    if (!value.is_number())
      throw ValidationError(where + ": share \"" + key + "\" must be a number");
    const int id = parse_id_key(key, where);
    if (id == kNoChoice) {
      row.no_choice = value.template get<double>();
      saw_no_choice = true;
      continue;
    }
    const auto& members = row.assortment.members();
    const auto it = std::find(members.begin(), members.end(), id);
    if (it == members.end())
      throw ValidationError(where + ": share for alternative " + std::to_string(id) +
                            " which is not in " + row.assortment.to_string());
    const auto k = static_cast<std::size_t>(it - members.begin());
    if (seen[k])
      throw ValidationError(where + ": duplicate share for alternative " + std::to_string(id));
    seen[k] = true;
    by_id[k] = value.template get<double>();
  }
  if (!saw_no_choice) throw ValidationError(where + ": missing share for the no-choice option 0");
  for (std::size_t k = 0; k < seen.size(); ++k)
    if (!seen[k])
      throw ValidationError(where + ": missing share for alternative " +
                            std::to_string(row.assortment.members()[k]));
  row.shares = std::move(by_id);
  return row;
}

template <typename Row>
ordered_json row_to_json(const Row& row) {
  ordered_json j;
  j["assortment"] = row.assortment.members();
  ordered_json shares = ordered_json::object();
  for (std::size_t k = 0; k < row.shares.size(); ++k)
    shares[std::to_string(row.assortment.members()[k])] = row.shares[k];
  shares["0"] = row.no_choice;
  j["shares"] = std::move(shares);
  return j;
}

}  // namespace

GspModel parse_model(const std::string& json_text) {
  const ordered_json j = parse_json(json_text, "model");
  if (!j.is_object()) throw ValidationError("model: expected a JSON object");
  const int n = require_int(j, "universe_size", "model");
  const auto& atoms_json = require(j, "atoms", "model");
  if (!atoms_json.is_array()) throw ValidationError("model: \"atoms\" must be an array");
  std::vector<Atom> atoms;
  atoms.reserve(atoms_json.size());
  for (std::size_t i = 0; i < atoms_json.size(); ++i) {
    const std::string where = "atom " + std::to_string(i);
    const auto& a = atoms_json[i];
    if (!a.is_object()) throw ValidationError(where + ": expected an object");
    Atom atom;
    atom.type.sequence = require_int_array(require(a, "sequence", where), where);
    atom.type.position = require_int(a, "position", where);
    atom.weight = require_number(a, "weight", where);
    atoms.push_back(std::move(atom));
  }
  return GspModel(n, std::move(atoms));
}

std::string serialize(const GspModel& model) {
  ordered_json j;
  j["universe_size"] = model.universe_size();
  ordered_json atoms = ordered_json::array();
  for (const Atom& a : model.atoms()) {
    ordered_json atom;
    atom["sequence"] = a.type.sequence;
    atom["position"] = a.type.position;
    atom["weight"] = a.weight;
    atoms.push_back(std::move(atom));
  }
  j["atoms"] = std::move(atoms);
  return j.dump(2) + "\n";
}

ChoiceTable parse_table(const std::string& json_text) {
  const ordered_json j = parse_json(json_text, "table");
  if (!j.is_object()) throw ValidationError("table: expected a JSON object");
  const int n = require_int(j, "universe_size", "table");
  const auto& rows_json = require(j, "rows", "table");
  if (!rows_json.is_array()) throw ValidationError("table: \"rows\" must be an array");
  std::vector<ChoiceTable::Row> rows;
  rows.reserve(rows_json.size());
  for (std::size_t i = 0; i < rows_json.size(); ++i)
    rows.push_back(parse_row<ChoiceTable::Row>(rows_json[i], i, "table"));
  return ChoiceTable(n, std::move(rows));
}

std::string serialize(const ChoiceTable& table) {
  ordered_json j;
  j["universe_size"] = table.universe_size();
  ordered_json rows = ordered_json::array();
  for (const auto& row : table.rows()) rows.push_back(row_to_json(row));
  j["rows"] = std::move(rows);
  return j.dump(2) + "\n";
}

estimation::ChoiceDataset parse_dataset(const std::string& json_text) {
  const ordered_json j = parse_json(json_text, "dataset");
  if (!j.is_object()) throw ValidationError("dataset: expected a JSON object");
  const int n = require_int(j, "universe_size", "dataset");
  const auto& rows_json = require(j, "rows", "dataset");
  if (!rows_json.is_array()) throw ValidationError("dataset: \"rows\" must be an array");
  std::vector<estimation::Observation> observations;
  observations.reserve(rows_json.size());
  for (std::size_t i = 0; i < rows_json.size(); ++i) {
    auto obs = parse_row<estimation::Observation>(rows_json[i], i, "dataset");
    if (auto it = rows_json[i].find("sample_size"); it != rows_json[i].end()) {
      if (!it->is_number_integer())
        throw ValidationError("dataset row " + std::to_string(i) +
                              ": \"sample_size\" must be an integer");
      obs.sample_size = it->get<long>();
    }
    observations.push_back(std::move(obs));
  }
  return estimation::ChoiceDataset(n, std::move(observations));
}

std::string serialize(const estimation::ChoiceDataset& dataset) {
  ordered_json j;
  j["universe_size"] = dataset.universe_size();
  ordered_json rows = ordered_json::array();
  for (const auto& obs : dataset.observations()) {
    ordered_json row = row_to_json(obs);
    if (obs.sample_size) row["sample_size"] = *obs.sample_size;
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  return j.dump(2) + "\n";
}

assortment::RevenueFunction parse_revenues(const std::string& json_text) {
  const ordered_json j = parse_json(json_text, "revenues");
  if (!j.is_object() || j.empty())
    throw ValidationError("revenues: expected a non-empty object of id -> revenue");
  int max_id = 0;
  for (const auto& [key, value] : j.items()) {
    const int id = parse_id_key(key, "revenues");
    if (id < 1) throw ValidationError("revenues: alternative ids start at 1");
    if (!value.is_number())
      throw ValidationError("revenues: value for \"" + key + "\" must be a number");
    max_id = std::max(max_id, id);
  }
  std::vector<double> by_id(static_cast<std::size_t>(max_id), -1.0);
  for (const auto& [key, value] : j.items())
    by_id[static_cast<std::size_t>(parse_id_key(key, "revenues") - 1)] = value.get<double>();
  for (std::size_t i = 0; i < by_id.size(); ++i)
    if (by_id[i] < 0.0)
      throw ValidationError("revenues: missing revenue for alternative " + std::to_string(i + 1));
  return assortment::RevenueFunction(std::move(by_id));
}

std::string serialize(const assortment::RevenueFunction& revenues) {
  ordered_json j = ordered_json::object();
  for (int id = 1; id <= revenues.universe_size(); ++id) j[std::to_string(id)] = revenues(id);
  return j.dump(2) + "\n";
}

std::vector<Assortment> parse_assortment_list(const std::string& json_text) {
  const ordered_json j = parse_json(json_text, "assortments");
  if (!j.is_array() || j.empty())
    throw ValidationError("assortments: expected a non-empty array of id arrays");
  std::vector<Assortment> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    out.emplace_back(require_int_array(j[i], "assortments entry " + std::to_string(i)));
  return out;
}

std::string serialize_assortment_list(const std::vector<Assortment>& assortments) {
  ordered_json j = ordered_json::array();
  for (const Assortment& s : assortments) j.push_back(s.members());
  return j.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + path);
  out << content;
}

}  // namespace gsp::io
