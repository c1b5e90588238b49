#pragma once

#include <string>
#include <vector>

#include "gsp/assortment.hpp"
#include "gsp/estimation.hpp"
#include "gsp/types.hpp"

namespace gsp::io {

// JSON formats. Parsers validate every documented invariant and report
// schema violations with the offending row, atom, or field.
//
//   model:    { "universe_size": N,
//               "atoms": [ { "sequence": [ints], "position": int, "weight": float } ] }
//   table:    { "universe_size": N,
//               "rows": [ { "assortment": [ints], "shares": { "<id>": float, "0": float } } ] }
//   dataset:  like table, with an optional "sample_size" per row
//   revenues: { "<id>": float, ... }

GspModel parse_model(const std::string& json_text);
std::string serialize(const GspModel& model);

ChoiceTable parse_table(const std::string& json_text);
std::string serialize(const ChoiceTable& table);

estimation::ChoiceDataset parse_dataset(const std::string& json_text);
std::string serialize(const estimation::ChoiceDataset& dataset);

assortment::RevenueFunction parse_revenues(const std::string& json_text);
std::string serialize(const assortment::RevenueFunction& revenues);

/// A plain list of assortments: [[1,2],[1,2,3]].
std::vector<Assortment> parse_assortment_list(const std::string& json_text);
std::string serialize_assortment_list(const std::vector<Assortment>& assortments);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace gsp::io
