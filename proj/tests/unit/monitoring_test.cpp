#include "itp/monitoring.hpp"

#include "helpers.hpp"

#include <doctest.h>

#include <algorithm>

using namespace itp;

namespace {

InspectionDefectProfile profile_with_rate(double rate) {
  InspectionDefectProfile profile;
  profile.total_accepted = 100;
  profile.severity_distribution = {
      {Severity::minor, 50}, {Severity::major, 45}, {Severity::crash, 5}};
  profile.reading_rate_loc_per_hour = rate;
  return profile;
}

const MonitorCheck& check_named(const MonitorReport& report, const std::string& name) {
  const auto it = std::find_if(report.checks.begin(), report.checks.end(),
                               [&](const MonitorCheck& c) { return c.name == name; });
  REQUIRE(it != report.checks.end());
  return *it;
}

} // namespace

TEST_CASE("band boundaries are inclusive") {
  Baseline baseline;
  baseline.reading_rate_band = {500.0, 700.0};

  for (const double rate : {500.0, 620.69, 700.0}) {
    const auto report = monitor(profile_with_rate(rate), baseline);
    CHECK_FALSE(report.has_warning());
    CHECK(check_named(report, "reading_rate").status == CheckStatus::pass);
  }
  for (const double rate : {499.999, 700.001, 0.0, 5000.0}) {
    const auto report = monitor(profile_with_rate(rate), baseline);
    CHECK(report.has_warning());
    const auto& check = check_named(report, "reading_rate");
    CHECK(check.status == CheckStatus::warn);
    CHECK(check.observed == rate);
    CHECK_FALSE(check.message.empty());
  }
}

TEST_CASE("default baseline uses the wide advisory band") {
  const Baseline baseline;
  CHECK(baseline.reading_rate_band.lo == 100.0);
  CHECK(baseline.reading_rate_band.hi == 1000.0);
  CHECK_FALSE(monitor(profile_with_rate(620.7), baseline).has_warning());
  CHECK(monitor(profile_with_rate(1200.0), baseline).has_warning());
}

TEST_CASE("total defect band is optional") {
  Baseline baseline;
  auto profile = profile_with_rate(600.0);

  CHECK(monitor(profile, baseline).checks.size() == 1);

  baseline.expected_total_defects_band = Band{80.0, 120.0};
  auto report = monitor(profile, baseline);
  CHECK(check_named(report, "total_defects").status == CheckStatus::pass);

  profile.total_accepted = 121;
  report = monitor(profile, baseline);
  CHECK(check_named(report, "total_defects").status == CheckStatus::warn);
  CHECK(check_named(report, "total_defects").observed == 121.0);
}

TEST_CASE("severity share bands compare fractions of accepted defects") {
  Baseline baseline;
  baseline.expected_severity_shares[Severity::major] = Band{0.3, 0.5};

  auto profile = profile_with_rate(600.0); // majors at 45/100
  auto report = monitor(profile, baseline);
  CHECK(check_named(report, "severity_share_major").status == CheckStatus::pass);
  CHECK(check_named(report, "severity_share_major").observed == doctest::Approx(0.45));

  profile.severity_distribution[Severity::major] = 55;
  profile.severity_distribution[Severity::minor] = 40;
  report = monitor(profile, baseline);
  CHECK(check_named(report, "severity_share_major").status == CheckStatus::warn);
}

TEST_CASE("case study passes its own baseline") {
  const auto profile = build_profile(testutil::case_study());
  Baseline baseline;
  baseline.reading_rate_band = {500.0, 700.0};
  const auto report = monitor(profile, baseline);
  CHECK_FALSE(report.has_warning());
  for (const auto& check : report.checks) CHECK(check.status == CheckStatus::pass);
}
