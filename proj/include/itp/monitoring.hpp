#pragma once

#include "itp/profiling.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace itp {

// Closed interval; boundary values pass.
struct Band {
  double lo = 0.0;
  double hi = 0.0;
};

// Expectations the inspection is checked against before its profile is
// trusted to steer testing. Only the reading-rate band is always present; the
// shipped default is the wide advisory band [100, 1000] LOC/hour.
struct Baseline {
  Band reading_rate_band{100.0, 1000.0};
  std::optional<Band> expected_total_defects_band;
  std::map<Severity, Band> expected_severity_shares;
};

enum class CheckStatus { pass, warn };

struct MonitorCheck {
  std::string name;
  CheckStatus status = CheckStatus::pass;
  double observed = 0.0;
  Band band;
  std::string message;
};

struct MonitorReport {
  std::vector<MonitorCheck> checks;

  bool has_warning() const;
};

// Compares the profile against the baseline. Warnings are advisory; the
// pipeline never stops on them (the CLI --strict flag turns them into a
// dedicated exit code).
MonitorReport monitor(const InspectionDefectProfile& profile, const Baseline& baseline);

} // namespace itp
