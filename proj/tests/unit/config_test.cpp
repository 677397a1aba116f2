#include "itp/config.hpp"

#include "helpers.hpp"
#include "itp/errors.hpp"

#include <doctest.h>

using namespace itp;

namespace {

RulesConfig parse(const std::string& text) { return parse_config(text); }

void expect_code(const std::string& text, const std::string& code) {
  try {
    parse_config(text);
    FAIL("accepted: " << text);
  } catch (const InputError& e) {
    CHECK(e.code() == code);
  }
}

} // namespace

TEST_CASE("case study rules file parses") {
  const auto config = parse(testutil::read("case_study/rules.json"));
  CHECK(config.format_version == 1);
  CHECK(config.baseline.reading_rate_band.lo == 500.0);
  CHECK(config.baseline.reading_rate_band.hi == 700.0);
  CHECK(config.rules.empty());
  REQUIRE(config.strategy.has_value());
  REQUIRE(config.strategy->stages.size() == 2);
  CHECK(config.strategy->stages[0].kind == StageKind::part_stage);
  CHECK(config.strategy->stages[1].kind == StageKind::type_stage);

  const auto& first = std::get<Assumption>(config.strategy->stages[0].selectors.at(0));
  CHECK(first.id == "equal-distribution");
  CHECK(first.kind == AssumptionKind::equal_distribution);

  const auto& second = std::get<Assumption>(config.strategy->stages[1].selectors.at(0));
  CHECK(second.id == "pareto-types-top2");
  CHECK(second.kind == AssumptionKind::pareto_types);
  CHECK(second.top_k == 2);

  // Defaults fill in whatever the file leaves out.
  CHECK(config.verdicts.min_test_defects == 5);
  CHECK(config.verdicts.type_overlap_min == 0.5);
  CHECK(config.verdicts.share_basis == ShareBasis::part_count);
  CHECK_FALSE(config.suitability.testing_suited.empty());
}

TEST_CASE("rules parse with thresholds or top_k, never both") {
  const auto config = parse(R"({
    "format_version": 1,
    "rules": [
      {"id": "dense", "scope": "parts", "target": "inspected",
       "metric": "defect_density", "comparator": "ge", "threshold": 0.012},
      {"metric": "major_per_kloc", "top_k": 3},
      {"scope": "defect_types", "metric": "type_count", "top_k": 2}
    ]
  })");
  REQUIRE(config.rules.size() == 3);
  CHECK(config.rules[0].id == "dense");
  CHECK(config.rules[0].target == RuleTarget::inspected);
  REQUIRE(std::holds_alternative<ThresholdSelector>(config.rules[0].selector));
  CHECK(std::get<ThresholdSelector>(config.rules[0].selector).threshold == 0.012);

  // Anonymous rules get stable generated names; scope defaults to parts.
  CHECK(config.rules[1].id == "rule-2");
  CHECK(config.rules[1].scope == RuleScope::parts);
  CHECK(config.rules[1].target == RuleTarget::all);
  REQUIRE(std::holds_alternative<TopKSelector>(config.rules[1].selector));

  CHECK(config.rules[2].id == "rule-3");
  CHECK(config.rules[2].scope == RuleScope::defect_types);

  expect_code(R"({"format_version": 1, "rules": [
    {"metric": "defect_content", "comparator": "gt", "threshold": 1, "top_k": 2}]})",
              "parse_error");
  expect_code(R"({"format_version": 1, "rules": [{"metric": "defect_content"}]})",
              "parse_error");
  expect_code(R"({"format_version": 1, "rules": [
    {"metric": "defect_content", "comparator": "gt"}]})",
              "parse_error");
  expect_code(R"({"format_version": 1, "rules": [
    {"metric": "type_count", "top_k": 1}]})",
              "invalid_metric_for_scope");
}

TEST_CASE("strategies may reference named rules or inline them") {
  const auto config = parse(R"({
    "format_version": 1,
    "rules": [{"id": "dense", "metric": "defect_density", "target": "inspected", "top_k": 2}],
    "strategy": {"stages": [{"kind": "part_stage", "rules": ["dense",
      {"id": "inline", "metric": "defect_content", "comparator": "gt", "threshold": 5}]}]}
  })");
  REQUIRE(config.strategy.has_value());
  const auto& selectors = config.strategy->stages.at(0).selectors;
  REQUIRE(selectors.size() == 2);
  CHECK(std::get<SelectionRule>(selectors[0]).id == "dense");
  CHECK(std::get<SelectionRule>(selectors[0]).metric == RuleMetric::defect_density);
  CHECK(std::get<SelectionRule>(selectors[1]).id == "inline");

  expect_code(R"({"format_version": 1,
    "strategy": {"stages": [{"kind": "part_stage", "rules": ["missing"]}]}})",
              "parse_error");
}

TEST_CASE("assumption parsing is strict about selector fields") {
  const auto config = parse(R"({
    "format_version": 1,
    "strategy": {"stages": [{"kind": "part_stage", "assumptions": [
      {"kind": "pareto_parts", "comparator": "ge", "threshold": 0.01}]}]}
  })");
  const auto& assumption = std::get<Assumption>(config.strategy->stages.at(0).selectors.at(0));
  CHECK(assumption.id == "pareto_parts");
  REQUIRE(assumption.threshold.has_value());
  CHECK(assumption.threshold->comparator == Comparator::ge);
  CHECK(assumption.threshold->threshold == 0.01);

  // Non-pareto kinds carry no selector knobs.
  expect_code(R"({"format_version": 1,
    "strategy": {"stages": [{"kind": "part_stage", "assumptions": [
      {"kind": "equal_distribution", "top_k": 2}]}]}})",
              "parse_error");
  expect_code(R"({"format_version": 1,
    "strategy": {"stages": [{"kind": "type_stage", "assumptions": [
      {"kind": "pareto_types", "top_k": 2, "comparator": "gt", "threshold": 1}]}]}})",
              "parse_error");
  expect_code(R"({"format_version": 1,
    "strategy": {"stages": [{"kind": "part_stage", "assumptions": [
      {"kind": "pareto_parts", "table": {"testing_suited": [], "inspection_suited": []}}]}]}})",
              "parse_error");
}

TEST_CASE("type suitability tables override the default and flow into assumptions") {
  const auto config = parse(R"({
    "format_version": 1,
    "suitability": {"testing_suited": ["timing_serialization", "other:usability"],
                    "inspection_suited": ["other:documentation"]},
    "strategy": {"stages": [{"kind": "type_stage",
                             "assumptions": [{"kind": "type_suitability"}]}]}
  })");
  REQUIRE(config.suitability.testing_suited.size() == 2);
  CHECK(config.suitability.testing_suited[0] == OdcType{OdcValue::timing_serialization, ""});
  CHECK(config.suitability.testing_suited[1] == OdcType{OdcValue::other, "usability"});

  const auto& assumption = std::get<Assumption>(config.strategy->stages.at(0).selectors.at(0));
  REQUIRE(assumption.table.has_value());
  CHECK(assumption.table->testing_suited == config.suitability.testing_suited);
}

TEST_CASE("verdict thresholds parse and are bounds checked") {
  const auto config = parse(R"({
    "format_version": 1,
    "verdicts": {"min_test_defects": 10, "type_overlap_min": 0.6, "share_basis": "case_count"}
  })");
  CHECK(config.verdicts.min_test_defects == 10);
  CHECK(config.verdicts.type_overlap_min == 0.6);
  CHECK(config.verdicts.share_basis == ShareBasis::case_count);

  expect_code(R"({"format_version": 1, "verdicts": {"min_test_defects": -1}})", "parse_error");
  expect_code(R"({"format_version": 1, "verdicts": {"type_overlap_min": 1.5}})", "parse_error");
  expect_code(R"({"format_version": 1, "verdicts": {"share_basis": "votes"}})", "parse_error");
}

TEST_CASE("config rejects unexpected versions and malformed bands") {
  expect_code(R"({"format_version": 9})", "unsupported_format_version");
  expect_code(R"({"format_version": 1, "baseline": {"reading_rate_band": [700, 500]}})",
              "parse_error");
  expect_code(R"({"format_version": 1, "baseline": {"reading_rate_band": [500]}})",
              "parse_error");
}

TEST_CASE("share basis spellings round-trip") {
  for (const auto basis : {ShareBasis::part_count, ShareBasis::case_count, ShareBasis::effort}) {
    CHECK(share_basis_from_string(to_string(basis)) == basis);
  }
  CHECK_THROWS_AS(share_basis_from_string("loc"), InputError);
}

TEST_CASE("experiment strategy lists parse both entry forms") {
  const auto strategies = parse_strategies(testutil::read("scenarios/strategies.json"));
  REQUIRE(strategies.size() == 3);

  CHECK(strategies[0].id == "pareto-top20");
  REQUIRE(strategies[0].strategy.has_value());
  CHECK_FALSE(strategies[0].random_fraction.has_value());

  CHECK(strategies[1].id == "random-20");
  CHECK_FALSE(strategies[1].strategy.has_value());
  REQUIRE(strategies[1].random_fraction.has_value());
  CHECK(*strategies[1].random_fraction == 0.2);

  CHECK(strategies[2].id == "equal-distribution");

  CHECK_THROWS_AS(
      parse_strategies(R"({"strategies": [{"id": "x", "kind": "random_parts", "fraction": 0}]})"),
      InputError);
  CHECK_THROWS_AS(
      parse_strategies(R"({"strategies": [{"id": "x", "kind": "random_parts", "fraction": 1.2}]})"),
      InputError);
  CHECK_THROWS_AS(parse_strategies(R"({"strategies": []})"), InputError);
}
