#include "itp/planning.hpp"

#include "itp/errors.hpp"
#include "itp/io.hpp"
#include "json_util.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace itp {

using nlohmann::json;
using namespace jsonu;

namespace {

bool addresses_any(const TestCase& test_case, const std::vector<OdcType>& types) {
  for (const auto& selected : types) {
    for (const auto& addressed : test_case.addressed_types) {
      if (odc_matches(selected, addressed)) return true;
    }
  }
  return false;
}

} // namespace

std::vector<std::string> expand_scope(const Dataset& dataset,
                                      const std::vector<std::string>& part_ids) {
  std::vector<std::string> scope = part_ids;
  for (const auto& id : part_ids) {
    const Part* part = dataset.find_part(id);
    if (!part || part->kind != PartKind::code_class) continue;
    auto mapped = dataset.traceability.find(id);
    if (mapped == dataset.traceability.end()) continue;
    if (std::find(scope.begin(), scope.end(), mapped->second) == scope.end()) {
      scope.push_back(mapped->second);
    }
  }
  return scope;
}

TestPlan build_plan(const Dataset& dataset, const PrioritizationResult& prioritization) {
  // A selected code class must be reachable from the catalog somehow.
  for (const auto& id : prioritization.prioritized_parts) {
    const Part* part = dataset.find_part(id);
    if (!part || part->kind != PartKind::code_class) continue;
    const bool mapped = dataset.traceability.count(id) > 0;
    const bool direct = std::any_of(dataset.test_cases.begin(), dataset.test_cases.end(),
                                    [&](const TestCase& c) { return c.part_id == id; });
    if (!mapped && !direct) {
      throw PipelineError("unmapped_part", "prioritized code class '" + id +
                                               "' has no traceability entry and no test case");
    }
  }

  const auto scope = expand_scope(dataset, prioritization.prioritized_parts);
  const std::set<std::string> in_scope(scope.begin(), scope.end());

  TestPlan plan;
  for (const auto& test_case : dataset.test_cases) {
    if (in_scope.count(test_case.part_id)) {
      plan.prioritized.push_back(test_case.id);
    } else {
      plan.deprioritized.push_back(test_case.id);
    }
  }

  // Type stage: within the prioritized half, cases addressing a selected
  // defect type run first. Catalog order is kept within both groups.
  if (!prioritization.prioritized_types.empty()) {
    std::map<std::string, const TestCase*> catalog;
    for (const auto& test_case : dataset.test_cases) catalog[test_case.id] = &test_case;
    std::stable_partition(plan.prioritized.begin(), plan.prioritized.end(),
                          [&](const std::string& id) {
                            return addresses_any(*catalog.at(id), prioritization.prioritized_types);
                          });
  }

  auto savings = predicted_savings(dataset, plan.prioritized, plan.deprioritized);
  plan.predicted_effort_saved_fraction = savings.effort_saved_fraction;
  plan.predicted_cases_omitted_fraction = savings.cases_omitted_fraction;
  plan.warnings = std::move(savings.warnings);
  return plan;
}

SavingsPrediction predicted_savings(const Dataset& dataset,
                                    const std::vector<std::string>& prioritized,
                                    const std::vector<std::string>& deprioritized) {
  if (dataset.test_cases.empty()) {
    throw PipelineError("undefined_fraction", "the test catalog is empty");
  }

  std::map<std::string, const TestCase*> catalog;
  for (const auto& test_case : dataset.test_cases) catalog[test_case.id] = &test_case;

  std::set<std::string> seen;
  auto check = [&](const std::vector<std::string>& ids, const char* half) {
    for (const auto& id : ids) {
      if (!catalog.count(id)) {
        throw InputError("invalid_plan",
                         std::string(half) + " test case '" + id + "' is not in the catalog");
      }
      if (!seen.insert(id).second) {
        throw InputError("invalid_plan", "test case '" + id + "' appears twice in the plan");
      }
    }
  };
  check(prioritized, "prioritized");
  check(deprioritized, "deprioritized");
  if (seen.size() != catalog.size()) {
    for (const auto& [id, unused] : catalog) {
      if (!seen.count(id)) {
        throw InputError("invalid_plan", "test case '" + id + "' is missing from the plan");
      }
    }
  }

  SavingsPrediction savings;

  int64_t total_cases = 0;
  int64_t omitted_cases = 0;
  for (const auto& [id, test_case] : catalog) total_cases += test_case->case_count;
  for (const auto& id : deprioritized) omitted_cases += catalog.at(id)->case_count;
  if (total_cases <= 0) {
    throw PipelineError("undefined_fraction", "the catalog has no test cases to count");
  }
  savings.cases_omitted_fraction =
      static_cast<double>(omitted_cases) / static_cast<double>(total_cases);

  const TestCase* missing_effort = nullptr;
  for (const auto& [id, test_case] : catalog) {
    if (!test_case->effort_minutes) {
      missing_effort = test_case;
      break;
    }
  }
  if (missing_effort) {
    savings.effort_saved_fraction = savings.cases_omitted_fraction;
    savings.warnings.push_back("test case '" + missing_effort->id +
                               "' has no effort; predicted savings use case counts");
    return savings;
  }

  double total_effort = 0.0;
  double omitted_effort = 0.0;
  for (const auto& [id, test_case] : catalog) total_effort += *test_case->effort_minutes;
  for (const auto& id : deprioritized) omitted_effort += *catalog.at(id)->effort_minutes;
  if (total_effort <= 0.0) {
    throw PipelineError("undefined_fraction", "total test effort is zero");
  }
  savings.effort_saved_fraction = omitted_effort / total_effort;
  return savings;
}

json assumption_to_json(const Assumption& assumption) {
  json obj;
  obj["id"] = assumption.id;
  obj["kind"] = to_string(assumption.kind);
  if (assumption.top_k) obj["top_k"] = *assumption.top_k;
  if (assumption.threshold) {
    obj["comparator"] = to_string(assumption.threshold->comparator);
    obj["threshold"] = assumption.threshold->threshold;
  }
  if (assumption.table) {
    json testing = json::array();
    for (const auto& type : assumption.table->testing_suited) testing.push_back(to_string(type));
    json inspection = json::array();
    for (const auto& type : assumption.table->inspection_suited) inspection.push_back(to_string(type));
    obj["table"] = json{{"testing_suited", std::move(testing)},
                        {"inspection_suited", std::move(inspection)}};
  }
  return obj;
}

json prioritization_to_json(const PrioritizationResult& result) {
  json obj;
  obj["prioritized_parts"] = result.prioritized_parts;
  json types = json::array();
  for (const auto& type : result.prioritized_types) types.push_back(to_string(type));
  obj["prioritized_types"] = std::move(types);
  obj["part_provenance"] = json::object();
  for (const auto& [id, sources] : result.part_provenance) obj["part_provenance"][id] = sources;
  obj["type_provenance"] = json::object();
  for (const auto& [id, sources] : result.type_provenance) obj["type_provenance"][id] = sources;
  if (!result.warnings.empty()) obj["warnings"] = result.warnings;
  return obj;
}

json plan_to_json(const PlanDocument& doc) {
  json plan;
  plan["prioritized"] = doc.plan.prioritized;
  plan["deprioritized"] = doc.plan.deprioritized;
  plan["predicted_effort_saved_fraction"] = doc.plan.predicted_effort_saved_fraction;
  plan["predicted_cases_omitted_fraction"] = doc.plan.predicted_cases_omitted_fraction;
  if (!doc.plan.warnings.empty()) plan["warnings"] = doc.plan.warnings;

  json assumptions = json::array();
  for (const auto& assumption : doc.assumptions) assumptions.push_back(assumption_to_json(assumption));

  return json{{"format_version", 1},
              {"assumptions", std::move(assumptions)},
              {"plan", std::move(plan)},
              {"prioritization", prioritization_to_json(doc.prioritization)}};
}

namespace {

std::vector<std::string> string_list(const json& value, const std::string& where) {
  if (!value.is_array()) fail(where, "must be an array of strings");
  std::vector<std::string> out;
  for (const auto& entry : value) {
    if (!entry.is_string()) fail(where, "must be an array of strings");
    out.push_back(entry.get<std::string>());
  }
  return out;
}

} // namespace

PlanDocument plan_from_json(const json& doc) {
  if (!doc.is_object()) fail("plan", "top-level document must be an object");
  const int64_t version = doc.value("format_version", int64_t{1});
  if (version != 1) {
    throw InputError("unsupported_format_version",
                     "plan format_version " + std::to_string(version) + " not supported");
  }

  PlanDocument result;
  size_t index = 0;
  for (const auto& entry : doc.value("assumptions", json::array())) {
    result.assumptions.push_back(
        parse_assumption(entry, "assumptions[" + std::to_string(index++) + "]"));
  }

  const json& plan = require(doc, "plan", "plan");
  result.plan.prioritized = string_list(require(plan, "prioritized", "plan"), "plan.prioritized");
  result.plan.deprioritized =
      string_list(require(plan, "deprioritized", "plan"), "plan.deprioritized");
  result.plan.predicted_effort_saved_fraction = plan.value("predicted_effort_saved_fraction", 0.0);
  result.plan.predicted_cases_omitted_fraction = plan.value("predicted_cases_omitted_fraction", 0.0);
  if (plan.contains("warnings")) {
    result.plan.warnings = string_list(plan["warnings"], "plan.warnings");
  }

  if (doc.contains("prioritization")) {
    const json& prioritization = doc["prioritization"];
    result.prioritization.prioritized_parts = string_list(
        require(prioritization, "prioritized_parts", "prioritization"), "prioritization.prioritized_parts");
    for (const auto& entry :
         string_list(require(prioritization, "prioritized_types", "prioritization"),
                     "prioritization.prioritized_types")) {
      result.prioritization.prioritized_types.push_back(odc_type_from_string(entry));
    }
    const json part_provenance = prioritization.value("part_provenance", json::object());
    for (const auto& [key, value] : part_provenance.items()) {
      result.prioritization.part_provenance[key] =
          string_list(value, "prioritization.part_provenance." + key);
    }
    const json type_provenance = prioritization.value("type_provenance", json::object());
    for (const auto& [key, value] : type_provenance.items()) {
      result.prioritization.type_provenance[key] =
          string_list(value, "prioritization.type_provenance." + key);
    }
  }
  return result;
}

PlanDocument parse_plan(const std::string& text) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) throw InputError("parse_error", "plan file is not valid JSON");
  return plan_from_json(doc);
}

PlanDocument load_plan(const std::string& path) { return parse_plan(read_file(path)); }

} // namespace itp
