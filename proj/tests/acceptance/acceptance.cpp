// End-to-end checks against the bundled case study plus the statistical
// guarantees of the simulator. Prints one PASS/FAIL line per criterion and
// exits nonzero when any fails. argv[1] names the CLI binary for the
// determinism checks.
#include "itp/config.hpp"
#include "itp/evaluation.hpp"
#include "itp/io.hpp"
#include "itp/planning.hpp"
#include "itp/profiling.hpp"
#include "itp/render.hpp"
#include "itp/rng.hpp"
#include "itp/simulation.hpp"
#include "itp/strategy.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <set>
#include <string>
#include <vector>

using namespace itp;

namespace {

std::string data_path(const std::string& name) { return std::string(ITP_DATA_DIR "/") + name; }

int failures = 0;

void report(int number, const std::string& title, bool ok, const std::string& detail = "") {
  std::cout << (ok ? "PASS" : "FAIL") << "  " << number << ". " << title;
  if (!ok && !detail.empty()) std::cout << "  [" << detail << "]";
  std::cout << "\n";
  if (!ok) ++failures;
}

void run(int number, const std::string& title, const std::function<void()>& body) {
  try {
    body();
    report(number, title, true);
  } catch (const std::exception& e) {
    report(number, title, false, e.what());
  }
}

void expect(bool condition, const std::string& what) {
  if (!condition) throw std::runtime_error(what);
}

std::string run_command(const std::string& command) {
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) throw std::runtime_error("cannot run: " + command);
  std::string output;
  std::array<char, 4096> buffer;
  size_t n = 0;
  while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) output.append(buffer.data(), n);
  const int status = pclose(pipe);
  if (status != 0) throw std::runtime_error("exit " + std::to_string(status) + ": " + command);
  return output;
}

} // namespace

int main(int argc, char** argv) {
  const auto started = std::chrono::steady_clock::now();
  const std::string cli = argc > 1 ? argv[1] : "";

  const Dataset dataset = load_dataset(data_path("case_study/dataset.json"));
  const auto profile = build_profile(dataset);
  const auto config = load_config(data_path("case_study/rules.json"));

  run(1, "per-class defect contents and densities", [&] {
    const std::vector<std::string> classes = {"I",  "II", "III", "IV", "V",  "VI",
                                              "VII", "VIII", "IX", "X", "XI", "XII"};
    const std::vector<int64_t> contents = {4, 18, 19, 2, 34, 18, 13, 24, 31, 11, 10, 5};
    const std::vector<double> densities = {0.009, 0.021, 0.020, 0.008, 0.061, 0.057,
                                           0.038, 0.031, 0.045, 0.026, 0.031, 0.016};
    expect(profile.per_part.size() == classes.size(), "expected 12 code classes");
    for (size_t i = 0; i < classes.size(); ++i) {
      const auto& row = profile.per_part.at(classes[i]);
      expect(row.defect_content == contents[i],
             classes[i] + ": content " + std::to_string(row.defect_content) + " != " +
                 std::to_string(contents[i]));
      expect(std::fabs(row.defect_density - densities[i]) <= 0.0005,
             classes[i] + ": density off by more than 0.0005");
    }
  });

  run(2, "defect type distributions from inspection and testing", [&] {
    const std::vector<int64_t> inspection = {53, 36, 32, 13, 1, 0, 0, 54};
    const std::vector<int64_t> testing = {2, 4, 0, 0, 1, 0, 0, 6};
    const auto from_inspection = type_distribution(dataset.defects, {Phase::inspection});
    const auto from_testing =
        type_distribution(dataset.defects, {Phase::unit_test, Phase::system_test});
    int64_t inspection_total = 0;
    int64_t testing_total = 0;
    for (int i = 0; i < kOdcCount; ++i) {
      const OdcValue value = kOdcOrder[i];
      expect(from_inspection.at(value) == inspection[i],
             "inspection " + to_string(value) + ": " + std::to_string(from_inspection.at(value)) +
                 " != " + std::to_string(inspection[i]));
      expect(from_testing.at(value) == testing[i],
             "testing " + to_string(value) + ": " + std::to_string(from_testing.at(value)) +
                 " != " + std::to_string(testing[i]));
      inspection_total += from_inspection.at(value);
      testing_total += from_testing.at(value);
    }
    expect(inspection_total == 189, "inspection total != 189");
    expect(testing_total == 13, "testing total != 13");
  });

  run(3, "triage keeps 189 of 236 reported problems", [&] {
    expect(profile.total_reported == 236,
           "reported " + std::to_string(profile.total_reported));
    expect(profile.total_accepted == 189,
           "accepted " + std::to_string(profile.total_accepted));
    expect(static_cast<int64_t>(triage_filter(dataset.defects).size()) ==
               static_cast<int64_t>(dataset.defects.size()) - 47,
           "triage filter count mismatch");
  });

  run(4, "reading rate lands near 630 LOC/h and inside the band", [&] {
    const double rate = profile.reading_rate_loc_per_hour;
    expect(std::fabs(rate - 630.0) / 630.0 <= 0.02,
           "rate " + std::to_string(rate) + " not within 2% of 630");
    const auto report = monitor(profile, config.baseline);
    expect(!report.has_warning(), "monitor warned against [500, 700]");
  });

  run(5, "effort savings: 16/206 for the derived plan, 47/206 for the stored one", [&] {
    const auto prioritization = compose_strategy(*config.strategy, profile, dataset.parts);
    const auto plan = build_plan(dataset, prioritization);
    expect(plan.deprioritized == std::vector<std::string>{"git.t1", "git.t2"},
           "derived plan deprioritizes more than the GIT groups");
    expect(std::fabs(plan.predicted_effort_saved_fraction - 0.08) <= 0.01,
           "derived savings " + std::to_string(plan.predicted_effort_saved_fraction));

    const auto stored = load_plan(data_path("case_study/plan_omit_reading_support.json"));
    const auto result = evaluate(dataset, stored, config.verdicts);
    expect(std::fabs(result.effort_saved_fraction - 0.23) <= 0.01,
           "stored savings " + std::to_string(result.effort_saved_fraction));
  });

  run(6, "the four-group omission misses no functional defect", [&] {
    const auto stored = load_plan(data_path("case_study/plan_omit_reading_support.json"));
    const auto missed = missed_defects(dataset, stored.plan);
    std::set<std::string> nonfunctional;
    for (const auto& defect : missed) {
      expect(!defect.functional, "functional defect '" + defect.defect_id + "' missed");
      nonfunctional.insert(defect.defect_id);
    }
    expect(nonfunctional == std::set<std::string>{"id8", "id9", "id10"},
           "missed set is not {id8, id9, id10}");
  });

  run(7, "both case-study assumptions come out supported", [&] {
    const auto stored = load_plan(data_path("case_study/plan_omit_reading_support.json"));
    const auto result = evaluate(dataset, stored, config.verdicts);
    expect(result.verdicts.size() == 2, "expected two verdicts");

    const auto& equal = result.verdicts[0];
    expect(equal.kind == AssumptionKind::equal_distribution, "first verdict kind");
    expect(equal.verdict == Verdict::supported, "equal distribution not supported");
    expect(std::fabs(equal.observed - 6.0 / 7.0) < 1e-12, "observed share != 6/7");

    const auto& types = result.verdicts[1];
    expect(types.kind == AssumptionKind::pareto_types, "second verdict kind");
    expect(types.verdict == Verdict::supported, "type pareto not supported");
    expect(std::fabs(types.observed - 8.0 / 13.0) < 1e-12, "overlap != 8/13");
  });

  run(8, "conservation holds on 1000 generated projects", [&] {
    Rng rng(20260819);
    for (int i = 0; i < 1000; ++i) {
      SyntheticScenario scenario;
      scenario.n_parts = 1 + static_cast<int64_t>(rng.next_below(30));
      scenario.loc_min = 10 + static_cast<int64_t>(rng.next_below(100));
      scenario.loc_max = scenario.loc_min + static_cast<int64_t>(rng.next_below(500));
      scenario.ground_truth = rng.next_below(2) ? GroundTruth::pareto : GroundTruth::uniform;
      scenario.pareto_shape = 0.5 + rng.next_double() * 2.0;
      scenario.total_defects = static_cast<int64_t>(rng.next_below(300));
      scenario.inspection_coverage = rng.next_double();
      scenario.inspection_effectiveness = rng.next_double();
      scenario.type_assignment =
          rng.next_below(2) ? TypeAssignment::uniform : TypeAssignment::none;

      const auto generated = generate(scenario, rng.next_u64());
      const auto violations = validate_dataset(generated.dataset);
      expect(violations.empty(), "generated dataset is invalid");

      const int64_t truth_total =
          std::accumulate(generated.true_defects_per_part.begin(),
                          generated.true_defects_per_part.end(), int64_t{0});
      expect(truth_total == scenario.total_defects, "ground truth loses defects");
      expect(static_cast<int64_t>(generated.dataset.defects.size()) == scenario.total_defects,
             "defect records lose defects");

      int64_t found = 0;
      for (const auto& defect : generated.dataset.defects) {
        if (defect.phase == Phase::inspection) ++found;
      }
      expect(found + generated.residual_defects == scenario.total_defects,
             "inspection + residual != total");

      const auto generated_profile = build_profile(generated.dataset);
      int64_t content_sum = 0;
      for (const auto& [id, row] : generated_profile.per_part) content_sum += row.defect_content;
      expect(content_sum == generated_profile.total_accepted, "profile loses defects");
      expect(generated_profile.total_accepted == found, "profile total != inspection findings");

      // Any cut of the catalog is an exact partition with consistent counts.
      std::vector<std::string> prioritized;
      std::vector<std::string> deprioritized;
      int64_t omitted = 0;
      for (const auto& test_case : generated.dataset.test_cases) {
        if (rng.next_below(2)) {
          prioritized.push_back(test_case.id);
        } else {
          deprioritized.push_back(test_case.id);
          omitted += test_case.case_count;
        }
      }
      const auto savings = predicted_savings(generated.dataset, prioritized, deprioritized);
      const int64_t catalog = static_cast<int64_t>(generated.dataset.test_cases.size());
      expect(std::fabs(savings.cases_omitted_fraction -
                       static_cast<double>(omitted) / static_cast<double>(catalog)) < 1e-12,
             "case fraction mismatch");
    }
  });

  run(9, "selection and miss sets grow monotonically", [&] {
    // Relaxing a content threshold only ever adds parts.
    Rng rng(77);
    for (int round = 0; round < 200; ++round) {
      SyntheticScenario scenario;
      scenario.n_parts = 2 + static_cast<int64_t>(rng.next_below(20));
      scenario.total_defects = static_cast<int64_t>(rng.next_below(200));
      scenario.inspection_coverage = 1.0;
      scenario.inspection_effectiveness = 0.5;
      const auto generated = generate(scenario, rng.next_u64());
      const auto generated_profile = build_profile(generated.dataset);

      std::vector<std::string> previous;
      for (double threshold = 20.0; threshold >= 0.0; threshold -= 2.5) {
        SelectionRule rule;
        rule.id = "cut";
        rule.metric = RuleMetric::defect_content;
        rule.selector = ThresholdSelector{Comparator::ge, threshold};
        auto ids = evaluate_rule(rule, generated_profile, generated.dataset.parts).part_ids;
        std::sort(ids.begin(), ids.end());
        expect(std::includes(ids.begin(), ids.end(), previous.begin(), previous.end()),
               "threshold relaxation dropped a part");
        previous = ids;
      }
    }

    // Deprioritizing one more case never rescues a missed defect.
    TestPlan plan;
    for (const auto& test_case : dataset.test_cases) plan.prioritized.push_back(test_case.id);
    std::vector<std::string> last;
    while (!plan.prioritized.empty()) {
      const auto missed = missed_defects(dataset, plan);
      std::vector<std::string> ids;
      for (const auto& m : missed) ids.push_back(m.defect_id);
      expect(std::includes(ids.begin(), ids.end(), last.begin(), last.end()),
             "a missed defect came back");
      last = ids;
      plan.deprioritized.push_back(plan.prioritized.back());
      plan.prioritized.pop_back();
    }
    expect(missed_defects(dataset, plan).size() == 13,
           "finally every test defect is missed");
  });

  run(10, "repeated CLI runs are byte-identical", [&] {
    expect(!cli.empty(), "CLI path missing (argv[1])");
    const std::string dataset_arg = " --dataset " + data_path("case_study/dataset.json");
    const std::vector<std::string> commands = {
        cli + " validate" + dataset_arg,
        cli + " profile" + dataset_arg + " --rules " + data_path("case_study/rules.json"),
        cli + " prioritize" + dataset_arg + " --rules " + data_path("case_study/rules.json"),
        cli + " evaluate" + dataset_arg + " --plan " +
            data_path("case_study/plan_omit_reading_support.json"),
        cli + " simulate --scenario " + data_path("scenarios/uniform.json") + " --strategies " +
            data_path("scenarios/strategies.json") + " --runs 50 --seed 7",
        cli + " run-all" + dataset_arg + " --rules " + data_path("case_study/rules.json"),
    };
    for (const auto& command : commands) {
      const auto first = run_command(command);
      const auto second = run_command(command);
      expect(!first.empty(), "no output: " + command);
      expect(first == second, "outputs differ: " + command);
    }
  });

  run(11, "the simulator tells the strategies apart", [&] {
    const auto strategies = load_strategies(data_path("scenarios/strategies.json"));

    const auto pareto = load_scenario(data_path("scenarios/pareto.json"));
    const auto heavy = run_experiment(pareto, strategies, 1000, pareto.seed);
    const int64_t wins = heavy.pairwise_wins.at("pareto-top20").at("random-20");
    expect(wins >= 950, "pareto beat random only " + std::to_string(wins) + "/1000 times");

    const auto uniform = load_scenario(data_path("scenarios/uniform.json"));
    const auto flat = run_experiment(uniform, strategies, 1000, uniform.seed);
    const double recall = flat.mean_recall.at("equal-distribution");
    expect(std::fabs(recall - 0.5) <= 0.05,
           "equal-distribution recall " + std::to_string(recall) + " strays from 0.5");

    const auto elapsed = std::chrono::duration_cast<std::chrono::seconds>(
                             std::chrono::steady_clock::now() - started)
                             .count();
    expect(elapsed < 60, "suite took " + std::to_string(elapsed) + "s");
  });

  if (failures > 0) {
    std::cout << failures << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all 11 criteria passed\n";
  return 0;
}
