#pragma once

#include "itp/config.hpp"
#include "itp/model.hpp"
#include "itp/strategy.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace itp {

// Catalog partition plus the predicted payoff of running only the
// prioritized half first (or dropping the rest).
struct TestPlan {
  std::vector<std::string> prioritized;   // test case ids
  std::vector<std::string> deprioritized; // test case ids
  double predicted_effort_saved_fraction = 0.0;
  double predicted_cases_omitted_fraction = 0.0;
  std::vector<std::string> warnings;
};

struct SavingsPrediction {
  double effort_saved_fraction = 0.0;
  double cases_omitted_fraction = 0.0;
  std::vector<std::string> warnings;
};

// Everything a stored plan file carries: the prioritization that produced the
// partition and the assumptions it rests on, for later evaluation.
struct PlanDocument {
  PrioritizationResult prioritization;
  TestPlan plan;
  std::vector<Assumption> assumptions;
};

// Splits the test catalog by the prioritized scope. A test case is
// prioritized when its part is selected, directly or through the
// traceability of a selected code class. Prioritized cases keep catalog
// order, except that cases addressing a prioritized defect type move to the
// front. A selected code class with neither a traceability entry nor a test
// case of its own raises unmapped_part.
TestPlan build_plan(const Dataset& dataset, const PrioritizationResult& prioritization);

// Fractions over the whole catalog: effort of the deprioritized half over
// total effort, and case counts likewise. When any case lacks effort the
// effort fraction falls back to case counts, with a warning. The ids must
// partition the catalog exactly; a zero total raises undefined_fraction.
SavingsPrediction predicted_savings(const Dataset& dataset,
                                    const std::vector<std::string>& prioritized,
                                    const std::vector<std::string>& deprioritized);

// Prioritized part ids expanded by traceability: for every selected code
// class, the functionality it belongs to joins the scope.
std::vector<std::string> expand_scope(const Dataset& dataset,
                                      const std::vector<std::string>& part_ids);

nlohmann::json plan_to_json(const PlanDocument& doc);
PlanDocument plan_from_json(const nlohmann::json& doc);
PlanDocument parse_plan(const std::string& text);
PlanDocument load_plan(const std::string& path);

nlohmann::json prioritization_to_json(const PrioritizationResult& result);
nlohmann::json assumption_to_json(const Assumption& assumption);

} // namespace itp
