#pragma once

#include "itp/model.hpp"
#include "itp/profiling.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace itp {

enum class RuleScope { parts, defect_types };
enum class RuleTarget { inspected, uninspected, all };
enum class RuleMetric { defect_content, defect_density, major_per_kloc, type_count, type_share };
enum class Comparator { gt, ge, lt, le };

struct ThresholdSelector {
  Comparator comparator = Comparator::gt;
  double threshold = 0.0;
};

struct TopKSelector {
  int64_t k = 1;
};

// One operational selection rule: a metric, a comparator/threshold or top-k
// cut, and a target scope. Example: focus unit testing on code classes where
// the inspection found more than 10 major defects per 1000 lines.
struct SelectionRule {
  std::string id;
  RuleScope scope = RuleScope::parts;
  RuleTarget target = RuleTarget::all;
  RuleMetric metric = RuleMetric::defect_content;
  std::variant<ThresholdSelector, TopKSelector> selector = ThresholdSelector{};
};

enum class AssumptionKind { equal_distribution, pareto_parts, type_suitability, pareto_types };

// Which defect flavors each activity is well suited to find. `other` entries
// are told apart by their detail text.
struct SuitabilityTable {
  std::vector<OdcType> testing_suited;
  std::vector<OdcType> inspection_suited;
};

// Shipped default: inspections catch maintainability/documentation findings,
// testing catches usability and runtime behavior.
SuitabilityTable default_suitability();

// A context-specific hypothesis about where residual defects sit, refined
// into selection rules before evaluation.
struct Assumption {
  std::string id;
  AssumptionKind kind = AssumptionKind::equal_distribution;
  std::optional<int64_t> top_k;                  // pareto variants
  std::optional<ThresholdSelector> threshold;    // pareto variants
  std::optional<SuitabilityTable> table;         // type_suitability
};

enum class StageKind { part_stage, type_stage };

using StageSelector = std::variant<SelectionRule, Assumption>;

struct StrategyStage {
  StageKind kind = StageKind::part_stage;
  std::vector<StageSelector> selectors;
};

// 1-stage (parts only or types only) or 2-stage (both) prioritization.
struct Strategy {
  std::vector<StrategyStage> stages;
};

// Outcome of evaluating a single rule: part ids or ODC types depending on the
// rule scope, in documented deterministic order.
struct RuleSelection {
  std::vector<std::string> part_ids;
  std::vector<OdcType> types;
  bool truncated = false; // top_k exceeded the candidate count
  std::string note;
};

struct PrioritizationResult {
  std::vector<std::string> prioritized_parts;
  std::vector<OdcType> prioritized_types;
  // entry (part id or ODC type string) -> ids of the rules/assumptions that selected it
  std::map<std::string, std::vector<std::string>> part_provenance;
  std::map<std::string, std::vector<std::string>> type_provenance;
  std::vector<std::string> warnings;
};

// Applies one rule to the universe. Part ranking breaks ties by metric
// descending, then defect content descending, then part id ascending; type
// ranking by count descending, then canonical ODC order. LOC-based metrics
// range over code classes; a code class without positive LOC raises
// undefined_density.
RuleSelection evaluate_rule(const SelectionRule& rule, const InspectionDefectProfile& profile,
                            const std::vector<Part>& universe);

// Rewrites a part/type assumption as the selection rule it abbreviates.
// type_suitability does not reduce to a metric rule and is handled by
// prioritize_types directly.
SelectionRule compile_assumption(const Assumption& assumption);

// equal_distribution: every uninspected part, ordered by id.
// pareto_parts: inspected parts by defect density descending, cut by
// top_k/threshold (default: every inspected part with content > 0).
std::vector<std::string> prioritize_parts(const Assumption& assumption,
                                          const InspectionDefectProfile& profile,
                                          const std::vector<Part>& universe);

// pareto_types: ODC categories by inspection count descending, cut by
// top_k/threshold. type_suitability: the testing-suited list of the table.
std::vector<OdcType> prioritize_types(const Assumption& assumption,
                                      const InspectionDefectProfile& profile);

// Runs every stage and merges selections in listed order, recording which
// rule/assumption selected each entry.
PrioritizationResult compose_strategy(const Strategy& strategy,
                                      const InspectionDefectProfile& profile,
                                      const std::vector<Part>& universe);

std::string to_string(RuleScope scope);
std::string to_string(RuleTarget target);
std::string to_string(RuleMetric metric);
std::string to_string(Comparator comparator);
std::string to_string(AssumptionKind kind);
std::string to_string(StageKind kind);

RuleScope rule_scope_from_string(const std::string& text);
RuleTarget rule_target_from_string(const std::string& text);
RuleMetric rule_metric_from_string(const std::string& text);
Comparator comparator_from_string(const std::string& text);
AssumptionKind assumption_kind_from_string(const std::string& text);
StageKind stage_kind_from_string(const std::string& text);

} // namespace itp
