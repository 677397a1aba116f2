#pragma once

#include "itp/model.hpp"

#include <cstdint>
#include <map>
#include <set>
#include <vector>

namespace itp {

struct PartProfile {
  int64_t defect_content = 0;  // accepted inspection defects in the part
  int64_t major_content = 0;   // accepted major-or-crash defects in the part
  double defect_density = 0.0; // defect_content / loc
  double major_per_kloc = 0.0; // major_content * 1000 / loc

  friend bool operator==(const PartProfile&, const PartProfile&) = default;
};

// Aggregated inspection output: per-class counts and densities plus type and
// severity distributions and the combined reading rate. Densities are kept at
// full precision; 3-decimal rounding happens only in report rendering.
struct InspectionDefectProfile {
  std::map<std::string, PartProfile> per_part; // code classes only
  std::map<OdcValue, int64_t> type_distribution;
  std::map<Severity, int64_t> severity_distribution;
  int64_t total_reported = 0; // inspection-phase reports before triage
  int64_t total_accepted = 0; // inspection-phase reports surviving triage
  double reading_rate_loc_per_hour = 0.0;
  std::map<std::string, double> reading_rate_by_inspector;
};

// Keeps exactly the reports accepted in triage, input order preserved.
std::vector<DefectReport> triage_filter(const std::vector<DefectReport>& reports);

// defect_content / loc. Throws undefined_density when loc <= 0.
double defect_density(int64_t defect_content, int64_t loc);

// LOC read per hour. Throws invalid_effort when effort_minutes <= 0.
double reading_rate(int64_t loc_read, int64_t effort_minutes);

// Counts accepted reports per ODC category over the given phases; every
// category is present in the result, absent ones as 0.
std::map<OdcValue, int64_t> type_distribution(const std::vector<DefectReport>& reports,
                                              const std::set<Phase>& phase_filter);

// Builds the full profile for a dataset. Inspection defects attached to a
// part without LOC raise undefined_density naming the part.
InspectionDefectProfile build_profile(const Dataset& dataset);

} // namespace itp
