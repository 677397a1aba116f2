#pragma once

#include "itp/monitoring.hpp"
#include "itp/strategy.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace itp {

// Proportional-share basis for the scope verdicts: the size a group of parts
// counts as when compared with its share of the relevant test defects.
enum class ShareBasis { part_count, case_count, effort };

// Thresholds for the post-hoc assumption verdicts.
struct VerdictConfig {
  int64_t min_test_defects = 5; // fewer relevant test defects -> inconclusive
  double type_overlap_min = 0.5;
  ShareBasis share_basis = ShareBasis::part_count;
};

// One rules file: monitoring baseline, named standalone rules, an optional
// prioritization strategy, a suitability table, and verdict thresholds.
struct RulesConfig {
  int64_t format_version = 1;
  Baseline baseline;
  std::vector<SelectionRule> rules;
  std::optional<Strategy> strategy;
  SuitabilityTable suitability = default_suitability();
  VerdictConfig verdicts;
};

// A strategy entry for simulation experiments: either a real strategy or the
// random-parts baseline that prioritizes a uniform part sample.
struct ExperimentStrategy {
  std::string id;
  std::optional<Strategy> strategy;
  std::optional<double> random_fraction;
};

SelectionRule parse_rule(const nlohmann::json& obj, const std::string& where);
Assumption parse_assumption(const nlohmann::json& obj, const std::string& where);
Strategy parse_strategy(const nlohmann::json& obj, const std::string& where,
                        const std::vector<SelectionRule>& named_rules);

RulesConfig parse_config(const std::string& text);
RulesConfig load_config(const std::string& path);

std::vector<ExperimentStrategy> parse_strategies(const std::string& text);
std::vector<ExperimentStrategy> load_strategies(const std::string& path);

std::string to_string(ShareBasis basis);
ShareBasis share_basis_from_string(const std::string& text);

} // namespace itp
