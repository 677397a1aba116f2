#include "itp/config.hpp"
#include "itp/errors.hpp"
#include "itp/evaluation.hpp"
#include "itp/io.hpp"
#include "itp/model.hpp"
#include "itp/monitoring.hpp"
#include "itp/planning.hpp"
#include "itp/profiling.hpp"
#include "itp/render.hpp"
#include "itp/simulation.hpp"
#include "itp/strategy.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

namespace py = pybind11;

namespace {

py::object to_py(const nlohmann::json& value) {
  switch (value.type()) {
    case nlohmann::json::value_t::object: {
      py::dict dict;
      for (const auto& [key, entry] : value.items()) dict[py::str(key)] = to_py(entry);
      return dict;
    }
    case nlohmann::json::value_t::array: {
      py::list list;
      for (const auto& entry : value) list.append(to_py(entry));
      return list;
    }
    case nlohmann::json::value_t::string: return py::str(value.get<std::string>());
    case nlohmann::json::value_t::boolean: return py::bool_(value.get<bool>());
    case nlohmann::json::value_t::number_integer: return py::int_(value.get<int64_t>());
    case nlohmann::json::value_t::number_unsigned: return py::int_(value.get<uint64_t>());
    case nlohmann::json::value_t::number_float: return py::float_(value.get<double>());
    default: return py::none();
  }
}

itp::PlanDocument plan_for(const itp::Dataset& dataset, const itp::RulesConfig& config) {
  if (!config.strategy) {
    throw itp::InputError("config_error", "the rules file has no strategy to apply");
  }
  const auto profile = itp::build_profile(dataset);
  itp::PlanDocument doc;
  doc.prioritization = itp::compose_strategy(*config.strategy, profile, dataset.parts);
  doc.plan = itp::build_plan(dataset, doc.prioritization);
  for (const auto& stage : config.strategy->stages) {
    for (const auto& selector : stage.selectors) {
      if (const auto* assumption = std::get_if<itp::Assumption>(&selector)) {
        doc.assumptions.push_back(*assumption);
      }
    }
  }
  return doc;
}

} // namespace

PYBIND11_MODULE(itp, m) {
  m.doc() = "turns inspection defect data into prioritized test plans";

  py::register_exception<itp::InputError>(m, "InputError");
  py::register_exception<itp::PipelineError>(m, "PipelineError");

  py::class_<itp::Dataset>(m, "Dataset")
      .def("__repr__", [](const itp::Dataset& dataset) {
        return "<itp.Dataset parts=" + std::to_string(dataset.parts.size()) +
               " defects=" + std::to_string(dataset.defects.size()) +
               " test_cases=" + std::to_string(dataset.test_cases.size()) + ">";
      });

  m.def("parse_dataset", &itp::parse_dataset, py::arg("text"),
        "parse a dataset JSON document");
  m.def("load_dataset", &itp::load_dataset, py::arg("path"), "read a dataset JSON file");
  m.def(
      "dataset_to_json",
      [](const itp::Dataset& dataset) { return itp::dataset_to_json(dataset).dump(2) + "\n"; },
      py::arg("dataset"), "serialize a dataset back to JSON text");

  m.def(
      "validate",
      [](const itp::Dataset& dataset) {
        return to_py(itp::violations_to_json(itp::validate_dataset(dataset)));
      },
      py::arg("dataset"), "list every violated invariant; empty 'violations' means valid");

  m.def(
      "profile",
      [](const itp::Dataset& dataset) {
        return to_py(itp::profile_to_json(itp::build_profile(dataset)));
      },
      py::arg("dataset"), "build the inspection defect profile");

  m.def(
      "monitor",
      [](const itp::Dataset& dataset, const std::string& rules_text) {
        const auto config = itp::parse_config(rules_text);
        const auto profile = itp::build_profile(dataset);
        return to_py(itp::monitor_to_json(itp::monitor(profile, config.baseline)));
      },
      py::arg("dataset"), py::arg("rules_text"),
      "check the profile against the baseline in a rules document");

  m.def(
      "prioritize",
      [](const itp::Dataset& dataset, const std::string& rules_text) {
        const auto config = itp::parse_config(rules_text);
        return to_py(itp::plan_to_json(plan_for(dataset, config)));
      },
      py::arg("dataset"), py::arg("rules_text"),
      "apply the strategy in a rules document and return the plan document");

  m.def(
      "evaluate",
      [](const itp::Dataset& dataset, const std::string& plan_text,
         const std::optional<std::string>& rules_text) {
        const auto plan = itp::parse_plan(plan_text);
        const itp::VerdictConfig verdicts =
            rules_text ? itp::parse_config(*rules_text).verdicts : itp::VerdictConfig{};
        return to_py(itp::evaluation_to_json(itp::evaluate(dataset, plan, verdicts)));
      },
      py::arg("dataset"), py::arg("plan_text"), py::arg("rules_text") = py::none(),
      "judge a stored plan against the recorded test defects");

  m.def(
      "generate_dataset",
      [](const std::string& scenario_text, uint64_t seed) {
        return itp::generate(itp::parse_scenario(scenario_text), seed).dataset;
      },
      py::arg("scenario_text"), py::arg("seed"),
      "generate one synthetic project from a scenario document");

  m.def(
      "simulate",
      [](const std::string& scenario_text, const std::string& strategies_text, int64_t runs,
         std::optional<uint64_t> seed) {
        const auto scenario = itp::parse_scenario(scenario_text);
        const auto strategies = itp::parse_strategies(strategies_text);
        return to_py(itp::experiment_to_json(
            itp::run_experiment(scenario, strategies, runs, seed.value_or(scenario.seed))));
      },
      py::arg("scenario_text"), py::arg("strategies_text"), py::arg("runs") = 100,
      py::arg("seed") = py::none(), "run every strategy on generated projects");
}
