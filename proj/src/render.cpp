#include "itp/render.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

namespace itp {

using nlohmann::json;

namespace {

std::string fixed(double value, int decimals) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(decimals) << value;
  return out.str();
}

std::string percent(double fraction) { return fixed(fraction * 100.0, 1) + "%"; }

std::string pad_right(std::string text, size_t width) {
  if (text.size() < width) text.append(width - text.size(), ' ');
  return text;
}

std::string pad_left(std::string text, size_t width) {
  if (text.size() < width) text.insert(0, width - text.size(), ' ');
  return text;
}

int64_t part_loc(const Dataset& dataset, const std::string& id) {
  const Part* part = dataset.find_part(id);
  return part && part->loc ? *part->loc : 0;
}

struct CatalogLine {
  const TestCase* test_case = nullptr;
  std::string part;
};

CatalogLine catalog_line(const Dataset& dataset, const std::string& id) {
  CatalogLine line;
  for (const auto& test_case : dataset.test_cases) {
    if (test_case.id == id) {
      line.test_case = &test_case;
      line.part = test_case.part_id;
      break;
    }
  }
  return line;
}

} // namespace

json profile_to_json(const InspectionDefectProfile& profile) {
  json per_part = json::object();
  for (const auto& [id, entry] : profile.per_part) {
    per_part[id] = json{{"defect_content", entry.defect_content},
                        {"major_content", entry.major_content},
                        {"defect_density", entry.defect_density},
                        {"major_per_kloc", entry.major_per_kloc}};
  }
  json types = json::object();
  for (const auto& [value, count] : profile.type_distribution) types[to_string(value)] = count;
  json severities = json::object();
  for (const auto& [severity, count] : profile.severity_distribution) {
    severities[to_string(severity)] = count;
  }
  json rates = json::object();
  for (const auto& [inspector, rate] : profile.reading_rate_by_inspector) rates[inspector] = rate;

  return json{{"format_version", 1},
              {"per_part", std::move(per_part)},
              {"type_distribution", std::move(types)},
              {"severity_distribution", std::move(severities)},
              {"total_reported", profile.total_reported},
              {"total_accepted", profile.total_accepted},
              {"reading_rate_loc_per_hour", profile.reading_rate_loc_per_hour},
              {"reading_rate_by_inspector", std::move(rates)}};
}

json monitor_to_json(const MonitorReport& report) {
  json checks = json::array();
  for (const auto& check : report.checks) {
    checks.push_back(json{{"name", check.name},
                          {"status", check.status == CheckStatus::pass ? "pass" : "warn"},
                          {"observed", check.observed},
                          {"band", json::array({check.band.lo, check.band.hi})},
                          {"message", check.message}});
  }
  return json{{"format_version", 1},
              {"checks", std::move(checks)},
              {"has_warning", report.has_warning()}};
}

json evaluation_to_json(const EvaluationResult& result) {
  json missed = json::array();
  for (const auto& defect : result.missed) {
    missed.push_back(json{{"defect_id", defect.defect_id},
                          {"functional", defect.functional},
                          {"odc_type", to_string(defect.odc_type)},
                          {"revealing_cases", defect.revealing_cases}});
  }
  json verdicts = json::array();
  for (const auto& verdict : result.verdicts) {
    verdicts.push_back(json{{"assumption_id", verdict.assumption_id},
                            {"kind", to_string(verdict.kind)},
                            {"verdict", to_string(verdict.verdict)},
                            {"observed", verdict.observed},
                            {"expected", verdict.expected},
                            {"relevant_defects", verdict.relevant_defects},
                            {"rationale", verdict.rationale}});
  }
  json doc{{"format_version", 1},
           {"effort_saved_fraction", result.effort_saved_fraction},
           {"cases_omitted_fraction", result.cases_omitted_fraction},
           {"test_defects_total", result.test_defects_total},
           {"missed", std::move(missed)},
           {"verdicts", std::move(verdicts)}};
  if (!result.warnings.empty()) doc["warnings"] = result.warnings;
  return doc;
}

json experiment_to_json(const ExperimentSummary& summary) {
  json strategies = json::object();
  for (const auto& [id, recall] : summary.mean_recall) {
    strategies[id] = json{{"mean_recall", recall},
                          {"mean_effort_saved", summary.mean_effort_saved.at(id)},
                          {"inconclusive_runs", summary.inconclusive_runs.at(id)}};
  }
  json wins = json::object();
  for (const auto& [a, row] : summary.pairwise_wins) {
    wins[a] = json::object();
    for (const auto& [b, count] : row) wins[a][b] = count;
  }
  return json{{"format_version", 1},
              {"runs", summary.runs},
              {"strategies", std::move(strategies)},
              {"pairwise_wins", std::move(wins)}};
}

json violations_to_json(const std::vector<Violation>& violations) {
  json list = json::array();
  for (const auto& violation : violations) {
    list.push_back(json{{"code", violation.code}, {"id", violation.id},
                        {"message", violation.message}});
  }
  return json{{"format_version", 1}, {"valid", violations.empty()},
              {"violations", std::move(list)}};
}

std::string render_profile_text(const InspectionDefectProfile& profile, const Dataset& dataset) {
  std::ostringstream out;
  out << "Inspection defect profile\n";
  out << "  reported defects  " << profile.total_reported << "\n";
  out << "  accepted defects  " << profile.total_accepted << "\n";
  out << "  reading rate      " << fixed(profile.reading_rate_loc_per_hour, 1) << " LOC/hour\n\n";

  out << "  " << pad_right("part", 10) << pad_left("LOC", 7) << pad_left("defects", 9)
      << pad_left("density", 9) << pad_left("major/kLOC", 12) << "\n";
  int64_t total_loc = 0;
  int64_t total_content = 0;
  for (const auto& [id, entry] : profile.per_part) {
    const int64_t loc = part_loc(dataset, id);
    total_loc += loc;
    total_content += entry.defect_content;
    out << "  " << pad_right(id, 10) << pad_left(std::to_string(loc), 7)
        << pad_left(std::to_string(entry.defect_content), 9)
        << pad_left(fixed(entry.defect_density, 3), 9)
        << pad_left(fixed(entry.major_per_kloc, 1), 12) << "\n";
  }
  out << "  " << pad_right("total", 10) << pad_left(std::to_string(total_loc), 7)
      << pad_left(std::to_string(total_content), 9) << "\n\n";

  out << "  " << pad_right("defect type", 28) << pad_left("count", 7) << pad_left("share", 8)
      << "\n";
  for (OdcValue value : kOdcOrder) {
    const int64_t count = profile.type_distribution.at(value);
    const double share = profile.total_accepted > 0
                             ? static_cast<double>(count) / profile.total_accepted
                             : 0.0;
    out << "  " << pad_right(to_string(value), 28) << pad_left(std::to_string(count), 7)
        << pad_left(fixed(share, 3), 8) << "\n";
  }
  out << "\n  " << pad_right("severity", 10) << pad_left("count", 7) << "\n";
  for (const auto& [severity, count] : profile.severity_distribution) {
    out << "  " << pad_right(to_string(severity), 10) << pad_left(std::to_string(count), 7) << "\n";
  }
  return out.str();
}

std::string render_profile_markdown(const InspectionDefectProfile& profile,
                                    const Dataset& dataset) {
  std::ostringstream out;
  out << "## Inspection defect profile\n\n";
  out << "- reported defects: " << profile.total_reported << "\n";
  out << "- accepted defects: " << profile.total_accepted << "\n";
  out << "- reading rate: " << fixed(profile.reading_rate_loc_per_hour, 1) << " LOC/hour\n\n";

  out << "| part | LOC | defects | density | major/kLOC |\n";
  out << "|---|---:|---:|---:|---:|\n";
  for (const auto& [id, entry] : profile.per_part) {
    out << "| " << id << " | " << part_loc(dataset, id) << " | " << entry.defect_content << " | "
        << fixed(entry.defect_density, 3) << " | " << fixed(entry.major_per_kloc, 1) << " |\n";
  }
  out << "\n| defect type | count | share |\n|---|---:|---:|\n";
  for (OdcValue value : kOdcOrder) {
    const int64_t count = profile.type_distribution.at(value);
    const double share = profile.total_accepted > 0
                             ? static_cast<double>(count) / profile.total_accepted
                             : 0.0;
    out << "| " << to_string(value) << " | " << count << " | " << fixed(share, 3) << " |\n";
  }
  return out.str();
}

std::string render_monitor_text(const MonitorReport& report) {
  std::ostringstream out;
  out << "Quality monitor\n";
  for (const auto& check : report.checks) {
    out << "  [" << (check.status == CheckStatus::pass ? "pass" : "WARN") << "] "
        << pad_right(check.name, 24) << fixed(check.observed, 3) << " in ["
        << fixed(check.band.lo, 3) << ", " << fixed(check.band.hi, 3) << "]";
    if (!check.message.empty()) out << "  " << check.message;
    out << "\n";
  }
  return out.str();
}

namespace {

void plan_half_text(std::ostringstream& out, const Dataset& dataset,
                    const std::vector<std::string>& ids) {
  for (const auto& id : ids) {
    const CatalogLine line = catalog_line(dataset, id);
    out << "  - " << pad_right(id, 18);
    if (line.test_case) {
      out << pad_right(line.part, 22) << line.test_case->case_count << " cases";
      if (line.test_case->effort_minutes) {
        out << ", " << fixed(*line.test_case->effort_minutes, 0) << " min";
      }
    }
    out << "\n";
  }
}

} // namespace

std::string render_plan_text(const PlanDocument& doc, const Dataset& dataset) {
  std::ostringstream out;
  out << "Test plan\n";
  if (!doc.prioritization.prioritized_parts.empty()) {
    out << "Prioritized parts:";
    for (const auto& id : doc.prioritization.prioritized_parts) out << " " << id;
    out << "\n";
  }
  if (!doc.prioritization.prioritized_types.empty()) {
    out << "Prioritized defect types:";
    for (const auto& type : doc.prioritization.prioritized_types) out << " " << to_string(type);
    out << "\n";
  }
  out << "\nRun first (" << doc.plan.prioritized.size() << " groups):\n";
  plan_half_text(out, dataset, doc.plan.prioritized);
  out << "\nDeprioritized (" << doc.plan.deprioritized.size() << " groups):\n";
  plan_half_text(out, dataset, doc.plan.deprioritized);
  out << "\nPredicted effort saved:  " << percent(doc.plan.predicted_effort_saved_fraction) << "\n";
  out << "Predicted cases omitted: " << percent(doc.plan.predicted_cases_omitted_fraction) << "\n";
  for (const auto& warning : doc.plan.warnings) out << "warning: " << warning << "\n";
  for (const auto& warning : doc.prioritization.warnings) out << "warning: " << warning << "\n";
  return out.str();
}

std::string render_plan_markdown(const PlanDocument& doc, const Dataset& dataset) {
  std::ostringstream out;
  out << "## Test plan\n\n";
  if (!doc.prioritization.prioritized_parts.empty()) {
    out << "Prioritized parts:";
    for (const auto& id : doc.prioritization.prioritized_parts) out << " `" << id << "`";
    out << "\n\n";
  }
  if (!doc.prioritization.prioritized_types.empty()) {
    out << "Prioritized defect types:";
    for (const auto& type : doc.prioritization.prioritized_types) {
      out << " `" << to_string(type) << "`";
    }
    out << "\n\n";
  }
  auto half = [&](const char* title, const std::vector<std::string>& ids) {
    out << "### " << title << "\n\n";
    out << "| test group | part | cases | effort (min) |\n|---|---|---:|---:|\n";
    for (const auto& id : ids) {
      const CatalogLine line = catalog_line(dataset, id);
      out << "| " << id << " | " << line.part << " | ";
      if (line.test_case) {
        out << line.test_case->case_count << " | ";
        if (line.test_case->effort_minutes) {
          out << fixed(*line.test_case->effort_minutes, 0);
        } else {
          out << "-";
        }
      } else {
        out << "- | -";
      }
      out << " |\n";
    }
    out << "\n";
  };
  half("Run first", doc.plan.prioritized);
  half("Deprioritized", doc.plan.deprioritized);
  out << "Predicted effort saved: **" << percent(doc.plan.predicted_effort_saved_fraction)
      << "**, cases omitted: **" << percent(doc.plan.predicted_cases_omitted_fraction) << "**\n";
  return out.str();
}

std::string render_evaluation_text(const EvaluationResult& result) {
  std::ostringstream out;
  out << "Evaluation\n";
  out << "  effort saved:   " << percent(result.effort_saved_fraction) << " of test effort\n";
  out << "  cases omitted:  " << percent(result.cases_omitted_fraction) << " of test cases\n";
  out << "  missed defects: " << result.missed.size() << " of " << result.test_defects_total
      << " test defects only revealed by deprioritized groups\n";
  for (const auto& defect : result.missed) {
    out << "    " << pad_right(defect.defect_id, 8) << pad_right(to_string(defect.odc_type), 24)
        << (defect.functional ? "functional" : "non-functional") << "  cases:";
    for (const auto& id : defect.revealing_cases) out << " " << id;
    out << "\n";
  }
  out << "  verdicts:\n";
  for (const auto& verdict : result.verdicts) {
    out << "    " << pad_right(verdict.assumption_id, 24) << pad_right(to_string(verdict.verdict), 14)
        << verdict.rationale << "\n";
  }
  for (const auto& warning : result.warnings) out << "  warning: " << warning << "\n";
  return out.str();
}

std::string render_evaluation_markdown(const EvaluationResult& result) {
  std::ostringstream out;
  out << "## Evaluation\n\n";
  out << "- effort saved: **" << percent(result.effort_saved_fraction) << "** of test effort\n";
  out << "- cases omitted: **" << percent(result.cases_omitted_fraction) << "** of test cases\n";
  out << "- missed defects: **" << result.missed.size() << "** of " << result.test_defects_total
      << " test defects\n\n";
  if (!result.missed.empty()) {
    out << "| defect | type | functional | revealing groups |\n|---|---|---|---|\n";
    for (const auto& defect : result.missed) {
      out << "| " << defect.defect_id << " | " << to_string(defect.odc_type) << " | "
          << (defect.functional ? "yes" : "no") << " | ";
      for (size_t i = 0; i < defect.revealing_cases.size(); ++i) {
        if (i) out << ", ";
        out << defect.revealing_cases[i];
      }
      out << " |\n";
    }
    out << "\n";
  }
  out << "| assumption | verdict | rationale |\n|---|---|---|\n";
  for (const auto& verdict : result.verdicts) {
    out << "| " << verdict.assumption_id << " | " << to_string(verdict.verdict) << " | "
        << verdict.rationale << " |\n";
  }
  for (const auto& warning : result.warnings) out << "\n> " << warning << "\n";
  return out.str();
}

std::string render_experiment_text(const ExperimentSummary& summary) {
  std::ostringstream out;
  out << "Simulation experiment (" << summary.runs << " runs)\n";
  out << "  " << pad_right("strategy", 24) << pad_left("mean recall", 13)
      << pad_left("mean saved", 12) << pad_left("inconclusive", 14) << "\n";
  for (const auto& [id, recall] : summary.mean_recall) {
    out << "  " << pad_right(id, 24) << pad_left(fixed(recall, 3), 13)
        << pad_left(fixed(summary.mean_effort_saved.at(id), 3), 12)
        << pad_left(std::to_string(summary.inconclusive_runs.at(id)), 14) << "\n";
  }
  bool header = false;
  for (const auto& [a, row] : summary.pairwise_wins) {
    for (const auto& [b, count] : row) {
      if (!header) {
        out << "  wins (row strictly beats column):\n";
        header = true;
      }
      out << "    " << pad_right(a + " > " + b, 40) << pad_left(std::to_string(count), 6) << "\n";
    }
  }
  return out.str();
}

std::string render_violations_text(const std::vector<Violation>& violations) {
  std::ostringstream out;
  if (violations.empty()) {
    out << "dataset is valid\n";
    return out.str();
  }
  out << violations.size() << " violation" << (violations.size() == 1 ? "" : "s") << "\n";
  for (const auto& violation : violations) {
    out << "  [" << violation.code << "] " << violation.id << ": " << violation.message << "\n";
  }
  return out.str();
}

} // namespace itp
