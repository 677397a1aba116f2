#pragma once

#include "itp/model.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace itp {

// Dataset document, format_version 1. Field names and value spellings are
// documented in docs/formats.md and are part of the tool's contract.
Dataset dataset_from_json(const nlohmann::json& doc);
Dataset parse_dataset(const std::string& text);
Dataset load_dataset(const std::string& path);
nlohmann::json dataset_to_json(const Dataset& dataset);

// Defect list ingestion from CSV with header
// id,part_id,severity,odc_type,phase,functional,accepted,description.
// Quoted fields follow the usual doubling rule for embedded quotes.
std::vector<DefectReport> parse_defects_csv(const std::string& text);
std::vector<DefectReport> load_defects_csv(const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

} // namespace itp
