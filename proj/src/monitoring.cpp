#include "itp/monitoring.hpp"

#include <sstream>

namespace itp {

namespace {

std::string format_number(double value) {
  std::ostringstream out;
  out << value;
  return out.str();
}

MonitorCheck make_check(const std::string& name, double observed, const Band& band) {
  MonitorCheck check;
  check.name = name;
  check.observed = observed;
  check.band = band;
  if (observed < band.lo) {
    check.status = CheckStatus::warn;
    check.message = name + " below band: " + format_number(observed) + " < " + format_number(band.lo);
  } else if (observed > band.hi) {
    check.status = CheckStatus::warn;
    check.message = name + " above band: " + format_number(observed) + " > " + format_number(band.hi);
  } else {
    check.status = CheckStatus::pass;
    check.message = name + " within band";
  }
  return check;
}

} // namespace

bool MonitorReport::has_warning() const {
  for (const auto& check : checks) {
    if (check.status == CheckStatus::warn) return true;
  }
  return false;
}

MonitorReport monitor(const InspectionDefectProfile& profile, const Baseline& baseline) {
  MonitorReport report;
  report.checks.push_back(
      make_check("reading_rate", profile.reading_rate_loc_per_hour, baseline.reading_rate_band));

  if (baseline.expected_total_defects_band) {
    report.checks.push_back(make_check("total_defects",
                                       static_cast<double>(profile.total_accepted),
                                       *baseline.expected_total_defects_band));
  }

  for (const auto& [severity, band] : baseline.expected_severity_shares) {
    auto it = profile.severity_distribution.find(severity);
    const int64_t count = it == profile.severity_distribution.end() ? 0 : it->second;
    const double share = profile.total_accepted > 0
                             ? static_cast<double>(count) / static_cast<double>(profile.total_accepted)
                             : 0.0;
    report.checks.push_back(make_check("severity_share_" + to_string(severity), share, band));
  }

  return report;
}

} // namespace itp
