#include "itp/io.hpp"

#include "itp/errors.hpp"
#include "json_util.hpp"

#include <fstream>
#include <sstream>

namespace itp {

using nlohmann::json;
using namespace jsonu;

namespace {

Part parse_part(const json& obj, const std::string& where) {
  Part part;
  part.id = require_string(obj, "id", where);
  part.name = obj.value("name", part.id);
  part.kind = part_kind_from_string(require_string(obj, "kind", where));
  if (obj.contains("loc")) {
    if (!obj["loc"].is_number_integer()) fail(where, "field 'loc' must be an integer");
    part.loc = obj["loc"].get<int64_t>();
  }
  part.inspected = require_bool(obj, "inspected", where);
  return part;
}

DefectReport parse_defect(const json& obj, const std::string& where) {
  DefectReport defect;
  defect.id = require_string(obj, "id", where);
  defect.part_id = require_string(obj, "part_id", where);
  defect.severity = severity_from_string(require_string(obj, "severity", where));
  defect.odc_type = odc_type_from_string(require_string(obj, "odc_type", where));
  defect.phase = phase_from_string(require_string(obj, "phase", where));
  defect.functional = require_bool(obj, "functional", where);
  defect.accepted = require_bool(obj, "accepted", where);
  defect.description = obj.value("description", "");
  return defect;
}

ReadingLog parse_reading_log(const json& obj, const std::string& where) {
  ReadingLog log;
  log.inspector_id = require_string(obj, "inspector_id", where);
  const json& parts = require(obj, "parts_read", where);
  if (!parts.is_array()) fail(where, "field 'parts_read' must be an array");
  for (const auto& entry : parts) log.parts_read.push_back(entry.get<std::string>());
  log.loc_read = require_int(obj, "loc_read", where);
  log.effort_minutes = require_int(obj, "effort_minutes", where);
  return log;
}

TestCase parse_test_case(const json& obj, const std::string& where) {
  TestCase test_case;
  test_case.id = require_string(obj, "id", where);
  test_case.part_id = require_string(obj, "part_id", where);
  test_case.case_count = obj.contains("case_count") ? require_int(obj, "case_count", where) : 1;
  if (obj.contains("effort_minutes")) {
    if (!obj["effort_minutes"].is_number()) fail(where, "field 'effort_minutes' must be a number");
    test_case.effort_minutes = obj["effort_minutes"].get<double>();
  }
  if (obj.contains("addressed_types")) {
    for (const auto& entry : obj["addressed_types"]) {
      test_case.addressed_types.push_back(odc_type_from_string(entry.get<std::string>()));
    }
  }
  if (obj.contains("revealed_defects")) {
    for (const auto& entry : obj["revealed_defects"]) {
      test_case.revealed_defects.push_back(entry.get<std::string>());
    }
  }
  return test_case;
}

} // namespace

Dataset dataset_from_json(const json& doc) {
  if (!doc.is_object()) fail("dataset", "top-level document must be an object");
  const int64_t version = doc.value("format_version", int64_t{1});
  if (version != 1) {
    throw InputError("unsupported_format_version",
                     "dataset format_version " + std::to_string(version) + " not supported");
  }
  Dataset dataset;
  size_t index = 0;
  for (const auto& entry : doc.value("parts", json::array())) {
    dataset.parts.push_back(parse_part(entry, "parts[" + std::to_string(index++) + "]"));
  }
  index = 0;
  for (const auto& entry : doc.value("defects", json::array())) {
    dataset.defects.push_back(parse_defect(entry, "defects[" + std::to_string(index++) + "]"));
  }
  index = 0;
  for (const auto& entry : doc.value("reading_logs", json::array())) {
    dataset.reading_logs.push_back(
        parse_reading_log(entry, "reading_logs[" + std::to_string(index++) + "]"));
  }
  index = 0;
  for (const auto& entry : doc.value("test_cases", json::array())) {
    dataset.test_cases.push_back(
        parse_test_case(entry, "test_cases[" + std::to_string(index++) + "]"));
  }
  if (doc.contains("traceability")) {
    if (!doc["traceability"].is_object()) fail("traceability", "must be an object");
    for (const auto& [key, value] : doc["traceability"].items()) {
      dataset.traceability[key] = value.get<std::string>();
    }
  }
  return dataset;
}

Dataset parse_dataset(const std::string& text) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) throw InputError("parse_error", "dataset is not valid JSON");
  return dataset_from_json(doc);
}

Dataset load_dataset(const std::string& path) {
  return parse_dataset(read_file(path));
}

json dataset_to_json(const Dataset& dataset) {
  json doc;
  doc["format_version"] = 1;
  doc["parts"] = json::array();
  for (const auto& part : dataset.parts) {
    json obj{{"id", part.id},
             {"name", part.name},
             {"kind", to_string(part.kind)},
             {"inspected", part.inspected}};
    if (part.loc) obj["loc"] = *part.loc;
    doc["parts"].push_back(std::move(obj));
  }
  doc["defects"] = json::array();
  for (const auto& defect : dataset.defects) {
    doc["defects"].push_back(json{{"id", defect.id},
                                  {"part_id", defect.part_id},
                                  {"severity", to_string(defect.severity)},
                                  {"odc_type", to_string(defect.odc_type)},
                                  {"phase", to_string(defect.phase)},
                                  {"functional", defect.functional},
                                  {"accepted", defect.accepted},
                                  {"description", defect.description}});
  }
  doc["reading_logs"] = json::array();
  for (const auto& log : dataset.reading_logs) {
    doc["reading_logs"].push_back(json{{"inspector_id", log.inspector_id},
                                       {"parts_read", log.parts_read},
                                       {"loc_read", log.loc_read},
                                       {"effort_minutes", log.effort_minutes}});
  }
  doc["test_cases"] = json::array();
  for (const auto& test_case : dataset.test_cases) {
    json obj{{"id", test_case.id},
             {"part_id", test_case.part_id},
             {"case_count", test_case.case_count}};
    if (test_case.effort_minutes) obj["effort_minutes"] = *test_case.effort_minutes;
    if (!test_case.addressed_types.empty()) {
      json types = json::array();
      for (const auto& type : test_case.addressed_types) types.push_back(to_string(type));
      obj["addressed_types"] = std::move(types);
    }
    if (!test_case.revealed_defects.empty()) obj["revealed_defects"] = test_case.revealed_defects;
    doc["test_cases"].push_back(std::move(obj));
  }
  doc["traceability"] = json::object();
  for (const auto& [from, to] : dataset.traceability) doc["traceability"][from] = to;
  return doc;
}

namespace {

// Minimal CSV reader: commas, CRLF/ LF rows, double-quoted fields with "" escapes.
std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool any = false;
  for (size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    switch (c) {
      case '"': quoted = true; any = true; break;
      case ',': row.push_back(std::move(field)); field.clear(); any = true; break;
      case '\r': break;
      case '\n':
        if (any || !field.empty() || !row.empty()) {
          row.push_back(std::move(field));
          rows.push_back(std::move(row));
        }
        field.clear();
        row.clear();
        any = false;
        break;
      default: field += c; any = true; break;
    }
  }
  if (quoted) throw InputError("parse_error", "defects csv: unterminated quoted field");
  if (any || !field.empty() || !row.empty()) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

bool bool_from_csv(const std::string& text, size_t line) {
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  throw InputError("parse_error",
                   "defects csv line " + std::to_string(line) + ": boolean expected, got '" + text + "'");
}

} // namespace

std::vector<DefectReport> parse_defects_csv(const std::string& text) {
  static const std::vector<std::string> kHeader = {
      "id", "part_id", "severity", "odc_type", "phase", "functional", "accepted", "description"};
  auto rows = parse_csv(text);
  if (rows.empty()) throw InputError("parse_error", "defects csv: missing header row");
  if (rows.front() != kHeader) {
    throw InputError("parse_error", "defects csv: header must be id,part_id,severity,odc_type,"
                                    "phase,functional,accepted,description");
  }
  std::vector<DefectReport> defects;
  for (size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    const size_t line = r + 1;
    if (row.size() != kHeader.size()) {
      throw InputError("parse_error", "defects csv line " + std::to_string(line) + ": expected " +
                                          std::to_string(kHeader.size()) + " columns, got " +
                                          std::to_string(row.size()));
    }
    DefectReport defect;
    defect.id = row[0];
    defect.part_id = row[1];
    defect.severity = severity_from_string(row[2]);
    defect.odc_type = odc_type_from_string(row[3]);
    defect.phase = phase_from_string(row[4]);
    defect.functional = bool_from_csv(row[5], line);
    defect.accepted = bool_from_csv(row[6], line);
    defect.description = row[7];
    defects.push_back(std::move(defect));
  }
  return defects;
}

std::vector<DefectReport> load_defects_csv(const std::string& path) {
  return parse_defects_csv(read_file(path));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("file_not_found", "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("file_not_writable", "cannot write '" + path + "'");
  out << content;
}

} // namespace itp
