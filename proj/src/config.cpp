#include "itp/config.hpp"

#include "itp/errors.hpp"
#include "itp/io.hpp"
#include "json_util.hpp"

#include <algorithm>

namespace itp {

using nlohmann::json;
using namespace jsonu;

namespace {

// Bands come as two-element [lo, hi] arrays.
Band parse_band(const json& value, const std::string& where) {
  if (!value.is_array() || value.size() != 2 || !value[0].is_number() || !value[1].is_number()) {
    fail(where, "band must be a [lo, hi] number pair");
  }
  Band band{value[0].get<double>(), value[1].get<double>()};
  if (band.lo > band.hi) fail(where, "band lo exceeds hi");
  return band;
}

Baseline parse_baseline(const json& obj, const std::string& where) {
  Baseline baseline;
  if (obj.contains("reading_rate_band")) {
    baseline.reading_rate_band = parse_band(obj["reading_rate_band"], where + ".reading_rate_band");
  }
  if (obj.contains("expected_total_defects_band")) {
    baseline.expected_total_defects_band =
        parse_band(obj["expected_total_defects_band"], where + ".expected_total_defects_band");
  }
  if (obj.contains("expected_severity_shares")) {
    const json& shares = obj["expected_severity_shares"];
    if (!shares.is_object()) fail(where, "expected_severity_shares must be an object");
    for (const auto& [key, value] : shares.items()) {
      baseline.expected_severity_shares[severity_from_string(key)] =
          parse_band(value, where + ".expected_severity_shares." + key);
    }
  }
  return baseline;
}

std::vector<OdcType> parse_type_list(const json& value, const std::string& where) {
  if (!value.is_array()) fail(where, "must be an array of ODC type strings");
  std::vector<OdcType> types;
  for (const auto& entry : value) {
    if (!entry.is_string()) fail(where, "must be an array of ODC type strings");
    types.push_back(odc_type_from_string(entry.get<std::string>()));
  }
  return types;
}

SuitabilityTable parse_suitability(const json& obj, const std::string& where) {
  SuitabilityTable table;
  table.testing_suited = parse_type_list(require(obj, "testing_suited", where), where + ".testing_suited");
  table.inspection_suited =
      parse_type_list(require(obj, "inspection_suited", where), where + ".inspection_suited");
  return table;
}

// top_k and comparator/threshold are mutually exclusive cuts.
void parse_selector_fields(const json& obj, const std::string& where,
                           std::optional<int64_t>& top_k,
                           std::optional<ThresholdSelector>& threshold) {
  const bool has_top_k = obj.contains("top_k");
  const bool has_comparator = obj.contains("comparator");
  const bool has_threshold = obj.contains("threshold");
  if (has_top_k && (has_comparator || has_threshold)) {
    fail(where, "top_k and threshold are mutually exclusive");
  }
  if (has_comparator != has_threshold) {
    fail(where, "threshold form needs both 'comparator' and 'threshold'");
  }
  if (has_top_k) {
    top_k = require_int(obj, "top_k", where);
    if (*top_k <= 0) fail(where, "top_k must be positive");
  } else if (has_threshold) {
    threshold = ThresholdSelector{comparator_from_string(require_string(obj, "comparator", where)),
                                  require_double(obj, "threshold", where)};
  }
}

} // namespace

SelectionRule parse_rule(const json& obj, const std::string& where) {
  if (!obj.is_object()) fail(where, "rule must be an object");
  SelectionRule rule;
  rule.id = obj.value("id", "");
  rule.scope = obj.contains("scope") ? rule_scope_from_string(require_string(obj, "scope", where))
                                     : RuleScope::parts;
  rule.target = obj.contains("target") ? rule_target_from_string(require_string(obj, "target", where))
                                       : RuleTarget::all;
  rule.metric = rule_metric_from_string(require_string(obj, "metric", where));
  if (rule.scope == RuleScope::defect_types &&
      rule.metric != RuleMetric::type_count && rule.metric != RuleMetric::type_share) {
    throw InputError("invalid_metric_for_scope",
                     where + ": metric '" + to_string(rule.metric) + "' needs part scope");
  }
  if (rule.scope == RuleScope::parts &&
      (rule.metric == RuleMetric::type_count || rule.metric == RuleMetric::type_share)) {
    throw InputError("invalid_metric_for_scope",
                     where + ": metric '" + to_string(rule.metric) + "' needs defect_types scope");
  }

  std::optional<int64_t> top_k;
  std::optional<ThresholdSelector> threshold;
  parse_selector_fields(obj, where, top_k, threshold);
  if (top_k) {
    rule.selector = TopKSelector{*top_k};
  } else if (threshold) {
    rule.selector = *threshold;
  } else {
    fail(where, "rule needs 'top_k' or 'comparator'/'threshold'");
  }
  return rule;
}

Assumption parse_assumption(const json& obj, const std::string& where) {
  if (!obj.is_object()) fail(where, "assumption must be an object");
  Assumption assumption;
  assumption.kind = assumption_kind_from_string(require_string(obj, "kind", where));
  assumption.id = obj.value("id", to_string(assumption.kind));
  parse_selector_fields(obj, where, assumption.top_k, assumption.threshold);
  const bool pareto = assumption.kind == AssumptionKind::pareto_parts ||
                      assumption.kind == AssumptionKind::pareto_types;
  if (!pareto && (assumption.top_k || assumption.threshold)) {
    fail(where, "'" + to_string(assumption.kind) + "' takes no top_k or threshold");
  }
  if (obj.contains("table")) {
    if (assumption.kind != AssumptionKind::type_suitability) {
      fail(where, "'" + to_string(assumption.kind) + "' takes no suitability table");
    }
    assumption.table = parse_suitability(obj["table"], where + ".table");
  }
  return assumption;
}

Strategy parse_strategy(const json& obj, const std::string& where,
                        const std::vector<SelectionRule>& named_rules) {
  if (!obj.is_object()) fail(where, "strategy must be an object");
  const json& stages = require(obj, "stages", where);
  if (!stages.is_array()) fail(where, "field 'stages' must be an array");

  Strategy strategy;
  size_t index = 0;
  for (const auto& entry : stages) {
    const std::string stage_where = where + ".stages[" + std::to_string(index++) + "]";
    if (!entry.is_object()) fail(stage_where, "stage must be an object");
    StrategyStage stage;
    stage.kind = stage_kind_from_string(require_string(entry, "kind", stage_where));

    if (entry.contains("rules")) {
      const json& rules = entry["rules"];
      if (!rules.is_array()) fail(stage_where, "field 'rules' must be an array");
      size_t rule_index = 0;
      for (const auto& rule_entry : rules) {
        const std::string rule_where = stage_where + ".rules[" + std::to_string(rule_index++) + "]";
        if (rule_entry.is_string()) {
          const std::string id = rule_entry.get<std::string>();
          auto found = std::find_if(named_rules.begin(), named_rules.end(),
                                    [&](const SelectionRule& rule) { return rule.id == id; });
          if (found == named_rules.end()) fail(rule_where, "unknown rule id '" + id + "'");
          stage.selectors.emplace_back(*found);
        } else {
          stage.selectors.emplace_back(parse_rule(rule_entry, rule_where));
        }
      }
    }
    if (entry.contains("assumptions")) {
      const json& assumptions = entry["assumptions"];
      if (!assumptions.is_array()) fail(stage_where, "field 'assumptions' must be an array");
      size_t assumption_index = 0;
      for (const auto& assumption_entry : assumptions) {
        stage.selectors.emplace_back(parse_assumption(
            assumption_entry, stage_where + ".assumptions[" + std::to_string(assumption_index++) + "]"));
      }
    }
    if (entry.contains("assumption")) {
      stage.selectors.emplace_back(parse_assumption(entry["assumption"], stage_where + ".assumption"));
    }
    if (stage.selectors.empty()) fail(stage_where, "stage has no rules or assumptions");
    strategy.stages.push_back(std::move(stage));
  }
  return strategy;
}

namespace {

// Assign stable fallback ids so provenance can always name its source.
void name_anonymous_rules(std::vector<SelectionRule>& rules) {
  size_t index = 0;
  for (auto& rule : rules) {
    ++index;
    if (rule.id.empty()) rule.id = "rule-" + std::to_string(index);
  }
}

// type_suitability stages without their own table use the config-level one.
void inject_suitability(Strategy& strategy, const SuitabilityTable& table) {
  for (auto& stage : strategy.stages) {
    for (auto& selector : stage.selectors) {
      if (auto* assumption = std::get_if<Assumption>(&selector)) {
        if (assumption->kind == AssumptionKind::type_suitability && !assumption->table) {
          assumption->table = table;
        }
      }
    }
  }
}

} // namespace

RulesConfig parse_config(const std::string& text) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) throw InputError("parse_error", "rules file is not valid JSON");
  if (!doc.is_object()) fail("rules", "top-level document must be an object");

  RulesConfig config;
  config.format_version = doc.value("format_version", int64_t{1});
  if (config.format_version != 1) {
    throw InputError("unsupported_format_version",
                     "rules format_version " + std::to_string(config.format_version) +
                         " not supported");
  }
  if (doc.contains("baseline")) config.baseline = parse_baseline(doc["baseline"], "baseline");
  if (doc.contains("rules")) {
    const json& rules = doc["rules"];
    if (!rules.is_array()) fail("rules", "field 'rules' must be an array");
    size_t index = 0;
    for (const auto& entry : rules) {
      config.rules.push_back(parse_rule(entry, "rules[" + std::to_string(index++) + "]"));
    }
    name_anonymous_rules(config.rules);
  }
  if (doc.contains("suitability")) {
    config.suitability = parse_suitability(doc["suitability"], "suitability");
  }
  if (doc.contains("verdicts")) {
    const json& verdicts = doc["verdicts"];
    if (!verdicts.is_object()) fail("verdicts", "must be an object");
    if (verdicts.contains("min_test_defects")) {
      config.verdicts.min_test_defects = require_int(verdicts, "min_test_defects", "verdicts");
      if (config.verdicts.min_test_defects < 1) fail("verdicts", "min_test_defects must be >= 1");
    }
    if (verdicts.contains("type_overlap_min")) {
      config.verdicts.type_overlap_min = require_double(verdicts, "type_overlap_min", "verdicts");
      if (config.verdicts.type_overlap_min < 0.0 || config.verdicts.type_overlap_min > 1.0) {
        fail("verdicts", "type_overlap_min must be in [0, 1]");
      }
    }
    if (verdicts.contains("share_basis")) {
      config.verdicts.share_basis =
          share_basis_from_string(require_string(verdicts, "share_basis", "verdicts"));
    }
  }
  if (doc.contains("strategy")) {
    config.strategy = parse_strategy(doc["strategy"], "strategy", config.rules);
    inject_suitability(*config.strategy, config.suitability);
  }
  return config;
}

RulesConfig load_config(const std::string& path) { return parse_config(read_file(path)); }

std::vector<ExperimentStrategy> parse_strategies(const std::string& text) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) throw InputError("parse_error", "strategies file is not valid JSON");
  if (!doc.is_object()) fail("strategies", "top-level document must be an object");
  const int64_t version = doc.value("format_version", int64_t{1});
  if (version != 1) {
    throw InputError("unsupported_format_version",
                     "strategies format_version " + std::to_string(version) + " not supported");
  }

  std::vector<ExperimentStrategy> strategies;
  const json& entries = require(doc, "strategies", "strategies");
  if (!entries.is_array()) fail("strategies", "field 'strategies' must be an array");
  size_t index = 0;
  for (const auto& entry : entries) {
    const std::string where = "strategies[" + std::to_string(index++) + "]";
    if (!entry.is_object()) fail(where, "strategy entry must be an object");
    ExperimentStrategy strategy;
    strategy.id = require_string(entry, "id", where);
    if (entry.value("kind", "") == std::string("random_parts")) {
      strategy.random_fraction = require_double(entry, "fraction", where);
      if (*strategy.random_fraction <= 0.0 || *strategy.random_fraction > 1.0) {
        fail(where, "fraction must be in (0, 1]");
      }
    } else {
      strategy.strategy = parse_strategy(entry, where, {});
      inject_suitability(*strategy.strategy, default_suitability());
    }
    strategies.push_back(std::move(strategy));
  }
  if (strategies.empty()) fail("strategies", "at least one strategy entry is required");
  return strategies;
}

std::vector<ExperimentStrategy> load_strategies(const std::string& path) {
  return parse_strategies(read_file(path));
}

std::string to_string(ShareBasis basis) {
  switch (basis) {
    case ShareBasis::part_count: return "part_count";
    case ShareBasis::case_count: return "case_count";
    case ShareBasis::effort: return "effort";
  }
  return "part_count";
}

ShareBasis share_basis_from_string(const std::string& text) {
  if (text == "part_count") return ShareBasis::part_count;
  if (text == "case_count") return ShareBasis::case_count;
  if (text == "effort") return ShareBasis::effort;
  throw InputError("parse_error", "unknown share basis '" + text + "'");
}

} // namespace itp
