#include "itp/strategy.hpp"

#include "itp/errors.hpp"

#include <algorithm>
#include <cmath>

namespace itp {
namespace {

// Metric values are exact fractions (counts over LOC), so rankings and
// integer thresholds never depend on floating-point rounding.
struct Fraction {
  int64_t num = 0;
  int64_t den = 1; // > 0
};

int compare(const Fraction& a, const Fraction& b) {
  const __int128 lhs = static_cast<__int128>(a.num) * b.den;
  const __int128 rhs = static_cast<__int128>(b.num) * a.den;
  if (lhs < rhs) return -1;
  if (lhs > rhs) return 1;
  return 0;
}

// Exact compare for integral thresholds; otherwise double compare with an
// absolute epsilon of 1e-9.
int compare(const Fraction& value, double threshold) {
  if (std::nearbyint(threshold) == threshold && std::fabs(threshold) < 9.0e18) {
    const __int128 rhs = static_cast<__int128>(static_cast<int64_t>(threshold)) * value.den;
    if (value.num < rhs) return -1;
    if (value.num > rhs) return 1;
    return 0;
  }
  const double x = static_cast<double>(value.num) / static_cast<double>(value.den);
  if (std::fabs(x - threshold) <= 1e-9) return 0;
  return x < threshold ? -1 : 1;
}

bool satisfies(const Fraction& value, const ThresholdSelector& selector) {
  const int order = compare(value, selector.threshold);
  switch (selector.comparator) {
    case Comparator::gt: return order > 0;
    case Comparator::ge: return order >= 0;
    case Comparator::lt: return order < 0;
    case Comparator::le: return order <= 0;
  }
  return false;
}

bool is_loc_based(RuleMetric metric) {
  return metric == RuleMetric::defect_density || metric == RuleMetric::major_per_kloc;
}

bool is_type_metric(RuleMetric metric) {
  return metric == RuleMetric::type_count || metric == RuleMetric::type_share;
}

struct PartCandidate {
  std::string id;
  Fraction value;
  int64_t content = 0;
};

std::vector<PartCandidate> part_candidates(const SelectionRule& rule,
                                           const InspectionDefectProfile& profile,
                                           const std::vector<Part>& universe) {
  const bool loc_based = is_loc_based(rule.metric);
  std::vector<PartCandidate> candidates;
  for (const auto& part : universe) {
    if (rule.target == RuleTarget::inspected && !part.inspected) continue;
    if (rule.target == RuleTarget::uninspected && part.inspected) continue;
    // LOC-based metrics are only defined on code classes.
    if (loc_based && part.kind != PartKind::code_class) continue;

    int64_t content = 0;
    int64_t majors = 0;
    auto entry = profile.per_part.find(part.id);
    if (entry != profile.per_part.end()) {
      content = entry->second.defect_content;
      majors = entry->second.major_content;
    }

    Fraction value{content, 1};
    if (loc_based) {
      if (!part.loc || *part.loc <= 0) {
        throw PipelineError("undefined_density", "rule '" + rule.id + "' needs lines of code for part '" +
                                                     part.id + "'");
      }
      value = rule.metric == RuleMetric::defect_density ? Fraction{content, *part.loc}
                                                        : Fraction{majors * 1000, *part.loc};
    }
    candidates.push_back({part.id, value, content});
  }
  return candidates;
}

// Metric descending, then defect content descending, then part id ascending.
bool ranks_before(const PartCandidate& a, const PartCandidate& b) {
  const int order = compare(a.value, b.value);
  if (order != 0) return order > 0;
  if (a.content != b.content) return a.content > b.content;
  return a.id < b.id;
}

struct TypeCandidate {
  OdcValue value = OdcValue::other;
  Fraction metric;
  int64_t count = 0;
};

std::vector<TypeCandidate> type_candidates(const SelectionRule& rule,
                                           const InspectionDefectProfile& profile) {
  std::vector<TypeCandidate> candidates;
  for (OdcValue value : kOdcOrder) {
    auto entry = profile.type_distribution.find(value);
    const int64_t count = entry == profile.type_distribution.end() ? 0 : entry->second;
    Fraction metric{count, 1};
    if (rule.metric == RuleMetric::type_share) {
      metric = profile.total_accepted > 0 ? Fraction{count, profile.total_accepted} : Fraction{0, 1};
    }
    candidates.push_back({value, metric, count});
  }
  return candidates;
}

std::string selector_id(const StageSelector& selector) {
  if (const auto* rule = std::get_if<SelectionRule>(&selector)) {
    return rule->id.empty() ? "rule" : rule->id;
  }
  const auto& assumption = std::get<Assumption>(selector);
  return assumption.id.empty() ? to_string(assumption.kind) : assumption.id;
}

} // namespace

SuitabilityTable default_suitability() {
  SuitabilityTable table;
  table.testing_suited = {OdcType{OdcValue::other, "usability"},
                          OdcType{OdcValue::timing_serialization, ""}};
  table.inspection_suited = {OdcType{OdcValue::other, "documentation"},
                             OdcType{OdcValue::other, "maintainability"}};
  return table;
}

RuleSelection evaluate_rule(const SelectionRule& rule, const InspectionDefectProfile& profile,
                            const std::vector<Part>& universe) {
  RuleSelection selection;

  if (rule.scope == RuleScope::parts) {
    if (is_type_metric(rule.metric)) {
      throw InputError("invalid_metric_for_scope", "rule '" + rule.id + "': metric '" +
                                                       to_string(rule.metric) +
                                                       "' needs defect_types scope");
    }
    auto candidates = part_candidates(rule, profile, universe);
    std::sort(candidates.begin(), candidates.end(), ranks_before);

    if (const auto* threshold = std::get_if<ThresholdSelector>(&rule.selector)) {
      for (const auto& candidate : candidates) {
        if (satisfies(candidate.value, *threshold)) selection.part_ids.push_back(candidate.id);
      }
    } else {
      const auto& top = std::get<TopKSelector>(rule.selector);
      if (top.k <= 0) {
        throw InputError("invalid_rule", "rule '" + rule.id + "': top_k must be positive, got " +
                                             std::to_string(top.k));
      }
      if (static_cast<size_t>(top.k) > candidates.size()) {
        selection.truncated = true;
        selection.note = "rule '" + rule.id + "': top_k " + std::to_string(top.k) +
                         " exceeds " + std::to_string(candidates.size()) + " candidates";
      }
      const size_t take = std::min<size_t>(static_cast<size_t>(top.k), candidates.size());
      for (size_t i = 0; i < take; ++i) selection.part_ids.push_back(candidates[i].id);
    }
    return selection;
  }

  // defect_types scope
  if (!is_type_metric(rule.metric)) {
    throw InputError("invalid_metric_for_scope", "rule '" + rule.id + "': metric '" +
                                                     to_string(rule.metric) + "' needs part scope");
  }
  auto candidates = type_candidates(rule, profile);
  // Count descending; stable sort keeps canonical ODC order for ties.
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const TypeCandidate& a, const TypeCandidate& b) { return a.count > b.count; });

  if (const auto* threshold = std::get_if<ThresholdSelector>(&rule.selector)) {
    for (const auto& candidate : candidates) {
      if (satisfies(candidate.metric, *threshold)) selection.types.push_back(OdcType{candidate.value, ""});
    }
  } else {
    const auto& top = std::get<TopKSelector>(rule.selector);
    if (top.k <= 0) {
      throw InputError("invalid_rule", "rule '" + rule.id + "': top_k must be positive, got " +
                                           std::to_string(top.k));
    }
    if (static_cast<size_t>(top.k) > candidates.size()) {
      selection.truncated = true;
      selection.note = "rule '" + rule.id + "': top_k " + std::to_string(top.k) + " exceeds " +
                       std::to_string(candidates.size()) + " candidates";
    }
    const size_t take = std::min<size_t>(static_cast<size_t>(top.k), candidates.size());
    for (size_t i = 0; i < take; ++i) selection.types.push_back(OdcType{candidates[i].value, ""});
  }
  return selection;
}

SelectionRule compile_assumption(const Assumption& assumption) {
  SelectionRule rule;
  rule.id = assumption.id.empty() ? to_string(assumption.kind) : assumption.id;
  switch (assumption.kind) {
    case AssumptionKind::equal_distribution:
      rule.scope = RuleScope::parts;
      rule.target = RuleTarget::uninspected;
      rule.metric = RuleMetric::defect_content;
      rule.selector = ThresholdSelector{Comparator::ge, 0.0};
      return rule;
    case AssumptionKind::pareto_parts:
      rule.scope = RuleScope::parts;
      rule.target = RuleTarget::inspected;
      rule.metric = RuleMetric::defect_density;
      break;
    case AssumptionKind::pareto_types:
      rule.scope = RuleScope::defect_types;
      rule.target = RuleTarget::all;
      rule.metric = RuleMetric::type_count;
      break;
    case AssumptionKind::type_suitability:
      throw InputError("config_error",
                       "assumption '" + rule.id + "': type_suitability has no rule form");
  }
  if (assumption.top_k) {
    rule.selector = TopKSelector{*assumption.top_k};
  } else if (assumption.threshold) {
    rule.selector = *assumption.threshold;
  } else {
    rule.selector = ThresholdSelector{Comparator::gt, 0.0};
  }
  return rule;
}

std::vector<std::string> prioritize_parts(const Assumption& assumption,
                                          const InspectionDefectProfile& profile,
                                          const std::vector<Part>& universe) {
  if (assumption.kind == AssumptionKind::type_suitability ||
      assumption.kind == AssumptionKind::pareto_types) {
    throw InputError("config_error", "assumption '" + assumption.id + "': '" +
                                         to_string(assumption.kind) +
                                         "' selects defect types, not parts");
  }
  auto selection = evaluate_rule(compile_assumption(assumption), profile, universe);
  // Equal distribution carries no ranking; list its parts by id.
  if (assumption.kind == AssumptionKind::equal_distribution) {
    std::sort(selection.part_ids.begin(), selection.part_ids.end());
  }
  return selection.part_ids;
}

std::vector<OdcType> prioritize_types(const Assumption& assumption,
                                      const InspectionDefectProfile& profile) {
  if (assumption.kind == AssumptionKind::equal_distribution ||
      assumption.kind == AssumptionKind::pareto_parts) {
    throw InputError("config_error", "assumption '" + assumption.id + "': '" +
                                         to_string(assumption.kind) +
                                         "' selects parts, not defect types");
  }
  if (assumption.kind == AssumptionKind::type_suitability) {
    if (!assumption.table) {
      throw InputError("config_error",
                       "assumption '" + assumption.id + "': suitability table missing");
    }
    return assumption.table->testing_suited;
  }
  return evaluate_rule(compile_assumption(assumption), profile, {}).types;
}

PrioritizationResult compose_strategy(const Strategy& strategy,
                                      const InspectionDefectProfile& profile,
                                      const std::vector<Part>& universe) {
  if (strategy.stages.empty() || strategy.stages.size() > 2) {
    throw InputError("invalid_strategy", "a strategy has one or two stages, got " +
                                             std::to_string(strategy.stages.size()));
  }
  if (strategy.stages.size() == 2 && strategy.stages[0].kind == strategy.stages[1].kind) {
    throw InputError("invalid_strategy",
                     "duplicate stage kind '" + to_string(strategy.stages[0].kind) + "'");
  }

  PrioritizationResult result;
  for (const auto& stage : strategy.stages) {
    if (stage.selectors.empty()) {
      throw InputError("invalid_strategy",
                       "stage '" + to_string(stage.kind) + "' has no rules or assumptions");
    }
    for (const auto& selector : stage.selectors) {
      const std::string source = selector_id(selector);

      if (stage.kind == StageKind::part_stage) {
        std::vector<std::string> ids;
        if (const auto* rule = std::get_if<SelectionRule>(&selector)) {
          if (rule->scope != RuleScope::parts) {
            throw InputError("invalid_strategy",
                             "rule '" + rule->id + "' selects defect types but sits in a part stage");
          }
          ids = evaluate_rule(*rule, profile, universe).part_ids;
        } else {
          const auto& assumption = std::get<Assumption>(selector);
          ids = prioritize_parts(assumption, profile, universe);
          if (assumption.kind == AssumptionKind::pareto_parts && ids.empty() &&
              std::none_of(universe.begin(), universe.end(),
                           [](const Part& part) { return part.inspected; })) {
            result.warnings.push_back("'" + source +
                                      "': no inspected parts in the universe, nothing selected");
          }
        }
        for (const auto& id : ids) {
          if (std::find(result.prioritized_parts.begin(), result.prioritized_parts.end(), id) ==
              result.prioritized_parts.end()) {
            result.prioritized_parts.push_back(id);
          }
          result.part_provenance[id].push_back(source);
        }
        continue;
      }

      std::vector<OdcType> types;
      if (const auto* rule = std::get_if<SelectionRule>(&selector)) {
        if (rule->scope != RuleScope::defect_types) {
          throw InputError("invalid_strategy",
                           "rule '" + rule->id + "' selects parts but sits in a type stage");
        }
        types = evaluate_rule(*rule, profile, universe).types;
      } else {
        types = prioritize_types(std::get<Assumption>(selector), profile);
      }
      for (const auto& type : types) {
        if (std::find(result.prioritized_types.begin(), result.prioritized_types.end(), type) ==
            result.prioritized_types.end()) {
          result.prioritized_types.push_back(type);
        }
        result.type_provenance[to_string(type)].push_back(source);
      }
    }
  }
  return result;
}

std::string to_string(RuleScope scope) {
  return scope == RuleScope::parts ? "parts" : "defect_types";
}

std::string to_string(RuleTarget target) {
  switch (target) {
    case RuleTarget::inspected: return "inspected";
    case RuleTarget::uninspected: return "uninspected";
    case RuleTarget::all: return "all";
  }
  return "all";
}

std::string to_string(RuleMetric metric) {
  switch (metric) {
    case RuleMetric::defect_content: return "defect_content";
    case RuleMetric::defect_density: return "defect_density";
    case RuleMetric::major_per_kloc: return "major_per_kloc";
    case RuleMetric::type_count: return "type_count";
    case RuleMetric::type_share: return "type_share";
  }
  return "defect_content";
}

std::string to_string(Comparator comparator) {
  switch (comparator) {
    case Comparator::gt: return "gt";
    case Comparator::ge: return "ge";
    case Comparator::lt: return "lt";
    case Comparator::le: return "le";
  }
  return "gt";
}

std::string to_string(AssumptionKind kind) {
  switch (kind) {
    case AssumptionKind::equal_distribution: return "equal_distribution";
    case AssumptionKind::pareto_parts: return "pareto_parts";
    case AssumptionKind::type_suitability: return "type_suitability";
    case AssumptionKind::pareto_types: return "pareto_types";
  }
  return "equal_distribution";
}

std::string to_string(StageKind kind) {
  return kind == StageKind::part_stage ? "part_stage" : "type_stage";
}

namespace {

[[noreturn]] void bad_token(const char* what, const std::string& text) {
  throw InputError("parse_error", std::string("unknown ") + what + " '" + text + "'");
}

} // namespace

RuleScope rule_scope_from_string(const std::string& text) {
  if (text == "parts") return RuleScope::parts;
  if (text == "defect_types") return RuleScope::defect_types;
  bad_token("rule scope", text);
}

RuleTarget rule_target_from_string(const std::string& text) {
  if (text == "inspected") return RuleTarget::inspected;
  if (text == "uninspected") return RuleTarget::uninspected;
  if (text == "all") return RuleTarget::all;
  bad_token("rule target", text);
}

RuleMetric rule_metric_from_string(const std::string& text) {
  if (text == "defect_content") return RuleMetric::defect_content;
  if (text == "defect_density") return RuleMetric::defect_density;
  if (text == "major_per_kloc") return RuleMetric::major_per_kloc;
  if (text == "type_count") return RuleMetric::type_count;
  if (text == "type_share") return RuleMetric::type_share;
  bad_token("rule metric", text);
}

Comparator comparator_from_string(const std::string& text) {
  if (text == "gt" || text == ">") return Comparator::gt;
  if (text == "ge" || text == ">=") return Comparator::ge;
  if (text == "lt" || text == "<") return Comparator::lt;
  if (text == "le" || text == "<=") return Comparator::le;
  bad_token("comparator", text);
}

AssumptionKind assumption_kind_from_string(const std::string& text) {
  if (text == "equal_distribution") return AssumptionKind::equal_distribution;
  if (text == "pareto_parts") return AssumptionKind::pareto_parts;
  if (text == "type_suitability") return AssumptionKind::type_suitability;
  if (text == "pareto_types") return AssumptionKind::pareto_types;
  bad_token("assumption kind", text);
}

StageKind stage_kind_from_string(const std::string& text) {
  if (text == "part_stage") return StageKind::part_stage;
  if (text == "type_stage") return StageKind::type_stage;
  bad_token("stage kind", text);
}

} // namespace itp
