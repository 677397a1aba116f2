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

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <ctime>
#include <iostream>
#include <string>
#include <vector>

namespace {

using nlohmann::json;

struct Options {
  std::string dataset_path;
  std::string defects_csv_path;
  std::string rules_path;
  std::string plan_path;
  std::string scenario_path;
  std::string strategies_path;
  std::string emit_dataset_path;
  std::string out_path;
  std::string format = "json";
  int64_t runs = 100;
  int64_t seed = -1; // -1: use the scenario's seed
  bool strict = false;
  bool timestamps = false;
};

// Warnings collected across the command; --strict turns them into exit 3.
std::vector<std::string> g_warnings;

void warn(const std::string& message) { g_warnings.push_back(message); }

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buffer[32];
  std::tm parts{};
  gmtime_r(&now, &parts);
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &parts);
  return buffer;
}

std::string dump(json doc, const Options& options) {
  if (options.timestamps) doc["generated_at"] = utc_now();
  return doc.dump(2) + "\n";
}

void emit(const std::string& content, const Options& options) {
  if (options.out_path.empty()) {
    std::cout << content;
  } else {
    itp::write_file(options.out_path, content);
  }
}

itp::Dataset load_input_dataset(const Options& options) {
  itp::Dataset dataset = itp::load_dataset(options.dataset_path);
  if (!options.defects_csv_path.empty()) {
    dataset.defects = itp::load_defects_csv(options.defects_csv_path);
  }
  return dataset;
}

// Pipeline commands refuse structurally broken datasets up front.
void ensure_valid(const itp::Dataset& dataset) {
  const auto violations = itp::validate_dataset(dataset);
  if (violations.empty()) return;
  for (const auto& violation : violations) {
    std::cerr << "  [" << violation.code << "] " << violation.id << ": " << violation.message
              << "\n";
  }
  throw itp::InputError("invalid_dataset", std::to_string(violations.size()) +
                                               " dataset violations; see the list above");
}

itp::RulesConfig load_rules_or_default(const Options& options) {
  if (options.rules_path.empty()) return itp::RulesConfig{};
  return itp::load_config(options.rules_path);
}

int run_validate(const Options& options) {
  const itp::Dataset dataset = load_input_dataset(options);
  const auto violations = itp::validate_dataset(dataset);
  if (options.format == "json") {
    emit(dump(itp::violations_to_json(violations), options), options);
  } else {
    emit(itp::render_violations_text(violations), options);
  }
  return violations.empty() ? 0 : 1;
}

int run_profile(const Options& options) {
  const itp::Dataset dataset = load_input_dataset(options);
  ensure_valid(dataset);
  const auto profile = itp::build_profile(dataset);

  std::optional<itp::MonitorReport> monitor;
  if (!options.rules_path.empty()) {
    const auto config = itp::load_config(options.rules_path);
    monitor = itp::monitor(profile, config.baseline);
    for (const auto& check : monitor->checks) {
      if (check.status == itp::CheckStatus::warn) warn(check.message);
    }
  }

  if (options.format == "json") {
    json doc{{"profile", itp::profile_to_json(profile)}};
    if (monitor) doc["monitor"] = itp::monitor_to_json(*monitor);
    emit(dump(std::move(doc), options), options);
  } else if (options.format == "markdown") {
    std::string text = itp::render_profile_markdown(profile, dataset);
    emit(text, options);
  } else {
    std::string text = itp::render_profile_text(profile, dataset);
    if (monitor) text += "\n" + itp::render_monitor_text(*monitor);
    emit(text, options);
  }
  return 0;
}

itp::PlanDocument make_plan(const itp::Dataset& dataset, const itp::RulesConfig& config) {
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
  for (const auto& warning : doc.prioritization.warnings) warn(warning);
  for (const auto& warning : doc.plan.warnings) warn(warning);
  return doc;
}

int run_prioritize(const Options& options) {
  const itp::Dataset dataset = load_input_dataset(options);
  ensure_valid(dataset);
  const auto config = itp::load_config(options.rules_path);
  const auto doc = make_plan(dataset, config);

  if (options.format == "json") {
    emit(dump(itp::plan_to_json(doc), options), options);
  } else if (options.format == "markdown") {
    emit(itp::render_plan_markdown(doc, dataset), options);
  } else {
    emit(itp::render_plan_text(doc, dataset), options);
  }
  return 0;
}

int run_evaluate(const Options& options) {
  const itp::Dataset dataset = load_input_dataset(options);
  ensure_valid(dataset);
  const auto plan = itp::load_plan(options.plan_path);
  const auto config = load_rules_or_default(options);
  const auto result = itp::evaluate(dataset, plan, config.verdicts);
  for (const auto& warning : result.warnings) warn(warning);

  if (options.format == "json") {
    emit(dump(itp::evaluation_to_json(result), options), options);
  } else if (options.format == "markdown") {
    emit(itp::render_evaluation_markdown(result), options);
  } else {
    emit(itp::render_evaluation_text(result), options);
  }
  return 0;
}

int run_simulate(const Options& options) {
  const auto scenario = itp::load_scenario(options.scenario_path);
  const uint64_t seed =
      options.seed >= 0 ? static_cast<uint64_t>(options.seed) : scenario.seed;

  if (!options.emit_dataset_path.empty()) {
    const auto run = itp::generate(scenario, seed);
    itp::write_file(options.emit_dataset_path, itp::dataset_to_json(run.dataset).dump(2) + "\n");
  }
  if (options.strategies_path.empty()) {
    if (options.emit_dataset_path.empty()) {
      throw itp::InputError("config_error", "nothing to do: give --strategies or --emit-dataset");
    }
    return 0;
  }

  const auto strategies = itp::load_strategies(options.strategies_path);
  const auto summary = itp::run_experiment(scenario, strategies, options.runs, seed);
  if (options.format == "json") {
    emit(dump(itp::experiment_to_json(summary), options), options);
  } else {
    emit(itp::render_experiment_text(summary), options);
  }
  return 0;
}

int run_all(const Options& options) {
  const itp::Dataset dataset = load_input_dataset(options);
  ensure_valid(dataset);
  const auto config = itp::load_config(options.rules_path);
  const auto profile = itp::build_profile(dataset);

  const auto monitor = itp::monitor(profile, config.baseline);
  for (const auto& check : monitor.checks) {
    if (check.status == itp::CheckStatus::warn) warn(check.message);
  }

  std::optional<itp::PlanDocument> plan;
  std::optional<itp::EvaluationResult> evaluation;
  if (config.strategy) {
    plan = make_plan(dataset, config);
    if (!dataset.test_cases.empty()) {
      evaluation = itp::evaluate(dataset, *plan, config.verdicts);
      for (const auto& warning : evaluation->warnings) warn(warning);
    }
  }

  if (options.format == "json") {
    json doc{{"profile", itp::profile_to_json(profile)},
             {"monitor", itp::monitor_to_json(monitor)}};
    if (plan) doc["plan"] = itp::plan_to_json(*plan);
    if (evaluation) doc["evaluation"] = itp::evaluation_to_json(*evaluation);
    emit(dump(std::move(doc), options), options);
  } else if (options.format == "markdown") {
    std::string text = itp::render_profile_markdown(profile, dataset);
    if (plan) text += "\n" + itp::render_plan_markdown(*plan, dataset);
    if (evaluation) text += "\n" + itp::render_evaluation_markdown(*evaluation);
    emit(text, options);
  } else {
    std::string text = itp::render_profile_text(profile, dataset);
    text += "\n" + itp::render_monitor_text(monitor);
    if (plan) text += "\n" + itp::render_plan_text(*plan, dataset);
    if (evaluation) text += "\n" + itp::render_evaluation_text(*evaluation);
    emit(text, options);
  }
  return 0;
}

void add_format(CLI::App* cmd, Options& options, bool with_markdown) {
  auto values = with_markdown ? std::vector<std::string>{"json", "text", "markdown"}
                              : std::vector<std::string>{"json", "text"};
  cmd->add_option("--format", options.format, "output format")
      ->check(CLI::IsMember(values))
      ->capture_default_str();
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"turns inspection defect data into prioritized test plans"};
  app.require_subcommand(1);
  Options options;

  auto* validate = app.add_subcommand("validate", "check a dataset's internal consistency");
  validate->add_option("--dataset", options.dataset_path, "dataset JSON")->required();
  validate->add_option("--defects-csv", options.defects_csv_path,
                       "CSV replacing the dataset's defect list");
  validate->add_option("--out", options.out_path, "write the report here instead of stdout");
  add_format(validate, options, false);

  auto* profile = app.add_subcommand("profile", "build the inspection defect profile");
  profile->add_option("--dataset", options.dataset_path, "dataset JSON")->required();
  profile->add_option("--defects-csv", options.defects_csv_path,
                      "CSV replacing the dataset's defect list");
  profile->add_option("--rules", options.rules_path, "rules JSON with the monitoring baseline");
  profile->add_option("--out", options.out_path, "write the profile here instead of stdout");
  add_format(profile, options, true);

  auto* prioritize = app.add_subcommand("prioritize", "apply the strategy and emit a test plan");
  prioritize->add_option("--dataset", options.dataset_path, "dataset JSON")->required();
  prioritize->add_option("--defects-csv", options.defects_csv_path,
                         "CSV replacing the dataset's defect list");
  prioritize->add_option("--rules", options.rules_path, "rules JSON with the strategy")->required();
  prioritize->add_option("--out", options.out_path, "write the plan here instead of stdout");
  add_format(prioritize, options, true);

  auto* evaluate = app.add_subcommand("evaluate", "judge a plan against recorded test defects");
  evaluate->add_option("--dataset", options.dataset_path, "dataset JSON")->required();
  evaluate->add_option("--defects-csv", options.defects_csv_path,
                       "CSV replacing the dataset's defect list");
  evaluate->add_option("--plan", options.plan_path, "plan JSON from 'prioritize'")->required();
  evaluate->add_option("--rules", options.rules_path, "rules JSON with verdict thresholds");
  evaluate->add_option("--out", options.out_path, "write the evaluation here instead of stdout");
  add_format(evaluate, options, true);

  auto* simulate = app.add_subcommand("simulate", "run strategies on synthetic projects");
  simulate->add_option("--scenario", options.scenario_path, "scenario JSON")->required();
  simulate->add_option("--strategies", options.strategies_path, "strategies JSON");
  simulate->add_option("--runs", options.runs, "generated projects per strategy")
      ->capture_default_str();
  simulate->add_option("--seed", options.seed, "override the scenario seed");
  simulate->add_option("--emit-dataset", options.emit_dataset_path,
                       "write one generated dataset to this path");
  simulate->add_option("--out", options.out_path, "write the summary here instead of stdout");
  add_format(simulate, options, false);

  auto* all = app.add_subcommand("run-all", "profile, monitor, plan, and evaluate in one go");
  all->add_option("--dataset", options.dataset_path, "dataset JSON")->required();
  all->add_option("--defects-csv", options.defects_csv_path,
                  "CSV replacing the dataset's defect list");
  all->add_option("--rules", options.rules_path, "rules JSON")->required();
  all->add_option("--out", options.out_path, "write the report here instead of stdout");
  add_format(all, options, true);

  for (auto* cmd : {validate, profile, prioritize, evaluate, simulate, all}) {
    cmd->add_flag("--strict", options.strict, "exit 3 when any warning was raised");
    cmd->add_flag("--timestamps", options.timestamps, "stamp outputs with the generation time");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1; // usage problems are input errors
  }

  int status = 0;
  try {
    if (app.got_subcommand(validate)) {
      status = run_validate(options);
    } else if (app.got_subcommand(profile)) {
      status = run_profile(options);
    } else if (app.got_subcommand(prioritize)) {
      status = run_prioritize(options);
    } else if (app.got_subcommand(evaluate)) {
      status = run_evaluate(options);
    } else if (app.got_subcommand(simulate)) {
      status = run_simulate(options);
    } else {
      status = run_all(options);
    }
  } catch (const itp::InputError& e) {
    std::cerr << "error [" << e.code() << "]: " << e.what() << "\n";
    return 1;
  } catch (const itp::PipelineError& e) {
    std::cerr << "error [" << e.code() << "]: " << e.what() << "\n";
    return 2;
  }

  for (const auto& warning : g_warnings) std::cerr << "warning: " << warning << "\n";
  if (status == 0 && options.strict && !g_warnings.empty()) return 3;
  return status;
}
