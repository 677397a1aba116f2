#include "itp/model.hpp"

#include "itp/errors.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace itp {

const Part* Dataset::find_part(const std::string& id) const {
  for (const auto& part : parts) {
    if (part.id == id) return &part;
  }
  return nullptr;
}

namespace {

void add(std::vector<Violation>& out, std::string code, std::string id, std::string message) {
  out.push_back({std::move(code), std::move(id), std::move(message)});
}

} // namespace

std::vector<Violation> validate_dataset(const Dataset& dataset) {
  std::vector<Violation> out;

  std::unordered_map<std::string, const Part*> parts_by_id;
  std::unordered_set<std::string> seen_parts;
  for (const auto& part : dataset.parts) {
    if (!seen_parts.insert(part.id).second) {
      add(out, "duplicate_id", part.id, "part id declared more than once");
    } else {
      parts_by_id.emplace(part.id, &part);
    }
    if (part.kind == PartKind::code_class) {
      if (!part.loc.has_value()) {
        add(out, "missing_loc", part.id, "code class without lines of code");
      } else if (*part.loc <= 0) {
        add(out, "nonpositive_loc", part.id, "code class with loc <= 0");
      }
    } else if (part.loc.has_value()) {
      add(out, "unexpected_loc", part.id, "functionality part carries lines of code");
    }
  }

  std::unordered_set<std::string> defect_ids;
  for (const auto& defect : dataset.defects) {
    if (!defect_ids.insert(defect.id).second) {
      add(out, "duplicate_id", defect.id, "defect id declared more than once");
    }
    if (!parts_by_id.count(defect.part_id)) {
      add(out, "unresolved_reference", defect.id,
          "defect references unknown part '" + defect.part_id + "'");
    }
  }

  for (const auto& log : dataset.reading_logs) {
    bool all_code_classes = true;
    bool resolved = true;
    int64_t loc_sum = 0;
    for (const auto& part_id : log.parts_read) {
      auto it = parts_by_id.find(part_id);
      if (it == parts_by_id.end()) {
        add(out, "unresolved_reference", log.inspector_id,
            "reading log references unknown part '" + part_id + "'");
        resolved = false;
      } else if (it->second->kind != PartKind::code_class || !it->second->loc) {
        all_code_classes = false;
      } else {
        loc_sum += *it->second->loc;
      }
    }
    if (log.effort_minutes <= 0) {
      add(out, "nonpositive_effort", log.inspector_id, "reading log with effort <= 0 minutes");
    }
    if (log.loc_read < 0) {
      add(out, "negative_loc_read", log.inspector_id, "reading log with negative loc_read");
    } else if (resolved && all_code_classes && log.loc_read < loc_sum) {
      // loc_read may exceed the sum (blank lines and comments are often
      // counted while reading) but can never undercut it.
      add(out, "loc_read_below_parts", log.inspector_id,
          "loc_read smaller than the lines of the parts read");
    }
  }

  std::unordered_set<std::string> case_ids;
  for (const auto& test_case : dataset.test_cases) {
    if (!case_ids.insert(test_case.id).second) {
      add(out, "duplicate_id", test_case.id, "test case id declared more than once");
    }
    if (!parts_by_id.count(test_case.part_id)) {
      add(out, "unresolved_reference", test_case.id,
          "test case references unknown part '" + test_case.part_id + "'");
    }
    if (test_case.case_count < 0) {
      add(out, "negative_case_count", test_case.id, "test case with negative case_count");
    }
    if (test_case.effort_minutes && *test_case.effort_minutes < 0) {
      add(out, "negative_effort", test_case.id, "test case with negative effort");
    }
    for (const auto& defect_id : test_case.revealed_defects) {
      if (!defect_ids.count(defect_id)) {
        add(out, "unresolved_reference", test_case.id,
            "test case reveals unknown defect '" + defect_id + "'");
      }
    }
  }

  for (const auto& [from, to] : dataset.traceability) {
    auto from_it = parts_by_id.find(from);
    auto to_it = parts_by_id.find(to);
    if (from_it == parts_by_id.end()) {
      add(out, "unresolved_reference", from, "traceability key is not a declared part");
    } else if (from_it->second->kind != PartKind::code_class) {
      add(out, "traceability_key_not_code_class", from,
          "traceability keys must be code classes");
    }
    if (to_it == parts_by_id.end()) {
      add(out, "unresolved_reference", from,
          "traceability maps to unknown part '" + to + "'");
    } else if (to_it->second->kind != PartKind::functionality) {
      add(out, "traceability_value_not_functionality", from,
          "traceability values must be functionalities");
    }
  }

  std::sort(out.begin(), out.end());
  return out;
}

std::string to_string(PartKind kind) {
  return kind == PartKind::code_class ? "code_class" : "functionality";
}

std::string to_string(Severity severity) {
  switch (severity) {
    case Severity::minor: return "minor";
    case Severity::major: return "major";
    case Severity::crash: return "crash";
  }
  return "minor";
}

std::string to_string(Phase phase) {
  switch (phase) {
    case Phase::inspection: return "inspection";
    case Phase::unit_test: return "unit_test";
    case Phase::system_test: return "system_test";
  }
  return "inspection";
}

std::string to_string(OdcValue value) {
  switch (value) {
    case OdcValue::algorithm_method: return "algorithm_method";
    case OdcValue::checking: return "checking";
    case OdcValue::function_class_object: return "function_class_object";
    case OdcValue::assignment_initialization: return "assignment_initialization";
    case OdcValue::relationship: return "relationship";
    case OdcValue::timing_serialization: return "timing_serialization";
    case OdcValue::interface_oo_messages: return "interface_oo_messages";
    case OdcValue::other: return "other";
  }
  return "other";
}

std::string to_string(const OdcType& type) {
  if (type.value == OdcValue::other && !type.detail.empty()) {
    return "other:" + type.detail;
  }
  return to_string(type.value);
}

bool odc_matches(const OdcType& selected, const OdcType& observed) {
  if (selected.value != observed.value) return false;
  return selected.detail.empty() || selected.detail == observed.detail;
}

PartKind part_kind_from_string(const std::string& text) {
  if (text == "code_class") return PartKind::code_class;
  if (text == "functionality") return PartKind::functionality;
  throw InputError("parse_error", "unknown part kind '" + text + "'");
}

Severity severity_from_string(const std::string& text) {
  if (text == "minor") return Severity::minor;
  if (text == "major") return Severity::major;
  if (text == "crash") return Severity::crash;
  throw InputError("parse_error", "unknown severity '" + text + "'");
}

Phase phase_from_string(const std::string& text) {
  if (text == "inspection") return Phase::inspection;
  if (text == "unit_test") return Phase::unit_test;
  if (text == "system_test") return Phase::system_test;
  throw InputError("parse_error", "unknown phase '" + text + "'");
}

OdcValue odc_value_from_string(const std::string& text) {
  for (OdcValue value : kOdcOrder) {
    if (text == to_string(value)) return value;
  }
  throw InputError("parse_error", "unknown ODC type '" + text + "'");
}

OdcType odc_type_from_string(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) return {odc_value_from_string(text), ""};
  OdcType type{odc_value_from_string(text.substr(0, colon)), text.substr(colon + 1)};
  if (type.value != OdcValue::other) {
    throw InputError("parse_error", "detail suffix is only valid on 'other': '" + text + "'");
  }
  return type;
}

} // namespace itp
