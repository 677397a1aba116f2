#pragma once

#include "itp/evaluation.hpp"
#include "itp/model.hpp"
#include "itp/monitoring.hpp"
#include "itp/planning.hpp"
#include "itp/profiling.hpp"
#include "itp/simulation.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace itp {

// JSON result documents. Keys are emitted in sorted order and numbers with
// shortest round-trip formatting, so serializing the same result twice gives
// identical bytes.
nlohmann::json profile_to_json(const InspectionDefectProfile& profile);
nlohmann::json monitor_to_json(const MonitorReport& report);
nlohmann::json evaluation_to_json(const EvaluationResult& result);
nlohmann::json experiment_to_json(const ExperimentSummary& summary);
nlohmann::json violations_to_json(const std::vector<Violation>& violations);

// Human renderings. Densities and shares are shown with 3 decimals, rates
// with 1; the JSON documents keep full precision.
std::string render_profile_text(const InspectionDefectProfile& profile, const Dataset& dataset);
std::string render_profile_markdown(const InspectionDefectProfile& profile, const Dataset& dataset);
std::string render_monitor_text(const MonitorReport& report);
std::string render_plan_text(const PlanDocument& doc, const Dataset& dataset);
std::string render_plan_markdown(const PlanDocument& doc, const Dataset& dataset);
std::string render_evaluation_text(const EvaluationResult& result);
std::string render_evaluation_markdown(const EvaluationResult& result);
std::string render_experiment_text(const ExperimentSummary& summary);
std::string render_violations_text(const std::vector<Violation>& violations);

} // namespace itp
