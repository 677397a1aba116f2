#include "itp/profiling.hpp"

#include "itp/errors.hpp"

#include <algorithm>

namespace itp {

std::vector<DefectReport> triage_filter(const std::vector<DefectReport>& reports) {
  std::vector<DefectReport> accepted;
  accepted.reserve(reports.size());
  std::copy_if(reports.begin(), reports.end(), std::back_inserter(accepted),
               [](const DefectReport& report) { return report.accepted; });
  return accepted;
}

double defect_density(int64_t defect_content, int64_t loc) {
  if (loc <= 0) {
    throw PipelineError("undefined_density", "defect density needs loc > 0, got " +
                                                 std::to_string(loc));
  }
  return static_cast<double>(defect_content) / static_cast<double>(loc);
}

double reading_rate(int64_t loc_read, int64_t effort_minutes) {
  if (effort_minutes <= 0) {
    throw PipelineError("invalid_effort", "reading rate needs effort > 0 minutes, got " +
                                              std::to_string(effort_minutes));
  }
  return static_cast<double>(loc_read) * 60.0 / static_cast<double>(effort_minutes);
}

std::map<OdcValue, int64_t> type_distribution(const std::vector<DefectReport>& reports,
                                              const std::set<Phase>& phase_filter) {
  std::map<OdcValue, int64_t> counts;
  for (OdcValue value : kOdcOrder) counts[value] = 0;
  for (const auto& report : reports) {
    if (report.accepted && phase_filter.count(report.phase)) ++counts[report.odc_type.value];
  }
  return counts;
}

InspectionDefectProfile build_profile(const Dataset& dataset) {
  InspectionDefectProfile profile;
  for (OdcValue value : kOdcOrder) profile.type_distribution[value] = 0;
  profile.severity_distribution = {{Severity::minor, 0}, {Severity::major, 0}, {Severity::crash, 0}};

  // per_part is a sorted map, so accumulation order is fixed regardless of
  // record order in the dataset.
  for (const auto& part : dataset.parts) {
    if (part.kind == PartKind::code_class) profile.per_part[part.id];
  }

  for (const auto& defect : dataset.defects) {
    if (defect.phase != Phase::inspection) continue;
    ++profile.total_reported;
    if (!defect.accepted) continue;
    ++profile.total_accepted;
    ++profile.type_distribution[defect.odc_type.value];
    ++profile.severity_distribution[defect.severity];

    const Part* part = dataset.find_part(defect.part_id);
    if (!part || part->kind != PartKind::code_class || !part->loc || *part->loc <= 0) {
      throw PipelineError("undefined_density",
                          "inspection defect '" + defect.id + "' attached to part '" +
                              defect.part_id + "' which has no lines of code");
    }
    ++profile.per_part[part->id].defect_content;
    if (defect.severity != Severity::minor) ++profile.per_part[part->id].major_content;
  }

  for (auto& [part_id, entry] : profile.per_part) {
    const Part* part = dataset.find_part(part_id);
    if (!part->loc) {
      throw PipelineError("undefined_density",
                          "code class '" + part_id + "' has no lines of code");
    }
    const int64_t loc = *part->loc;
    entry.defect_density = defect_density(entry.defect_content, loc);
    entry.major_per_kloc = static_cast<double>(entry.major_content) * 1000.0 / static_cast<double>(loc);
  }

  int64_t loc_read_total = 0;
  int64_t effort_total = 0;
  for (const auto& log : dataset.reading_logs) {
    loc_read_total += log.loc_read;
    effort_total += log.effort_minutes;
    profile.reading_rate_by_inspector[log.inspector_id] =
        reading_rate(log.loc_read, log.effort_minutes);
  }
  profile.reading_rate_loc_per_hour =
      effort_total > 0 ? reading_rate(loc_read_total, effort_total) : 0.0;

  return profile;
}

} // namespace itp
