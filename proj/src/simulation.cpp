#include "itp/simulation.hpp"

#include "itp/errors.hpp"
#include "itp/evaluation.hpp"
#include "itp/io.hpp"
#include "itp/planning.hpp"
#include "itp/profiling.hpp"
#include "itp/rng.hpp"
#include "json_util.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace itp {

using nlohmann::json;
using namespace jsonu;

namespace {

[[noreturn]] void bad_scenario(const std::string& what) {
  throw InputError("invalid_scenario", what);
}

// Stable 64-bit hash (FNV-1a) so a strategy's substream depends on its id,
// not its position in the strategies file.
uint64_t stable_hash(const std::string& text) {
  uint64_t hash = 0xCBF29CE484222325ULL;
  for (const char c : text) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 0x100000001B3ULL;
  }
  return hash;
}

std::string padded(int64_t value, int64_t width) {
  std::string digits = std::to_string(value);
  while (static_cast<int64_t>(digits.size()) < width) digits.insert(digits.begin(), '0');
  return digits;
}

int64_t digits_of(int64_t value) {
  int64_t width = 1;
  while (value >= 10) {
    value /= 10;
    ++width;
  }
  return width;
}

} // namespace

SyntheticScenario parse_scenario(const std::string& text) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) throw InputError("parse_error", "scenario file is not valid JSON");
  if (!doc.is_object()) fail("scenario", "top-level document must be an object");
  const int64_t version = doc.value("format_version", int64_t{1});
  if (version != 1) {
    throw InputError("unsupported_format_version",
                     "scenario format_version " + std::to_string(version) + " not supported");
  }

  SyntheticScenario scenario;
  scenario.n_parts = require_int(doc, "n_parts", "scenario");
  if (scenario.n_parts < 1) bad_scenario("n_parts must be at least 1");

  const json& loc = require(doc, "loc_distribution", "scenario");
  scenario.loc_min = require_int(loc, "min", "scenario.loc_distribution");
  scenario.loc_max = require_int(loc, "max", "scenario.loc_distribution");
  if (scenario.loc_min < 1) bad_scenario("loc_distribution.min must be at least 1");
  if (scenario.loc_min > scenario.loc_max) bad_scenario("loc_distribution.min exceeds max");

  const json& truth = require(doc, "ground_truth", "scenario");
  const std::string kind = require_string(truth, "kind", "scenario.ground_truth");
  if (kind == "uniform") {
    scenario.ground_truth = GroundTruth::uniform;
  } else if (kind == "pareto") {
    scenario.ground_truth = GroundTruth::pareto;
    scenario.pareto_shape = require_double(truth, "shape", "scenario.ground_truth");
    if (scenario.pareto_shape <= 0.0) bad_scenario("ground_truth.shape must be positive");
  } else {
    bad_scenario("unknown ground truth kind '" + kind + "'");
  }

  scenario.total_defects = require_int(doc, "total_defects", "scenario");
  if (scenario.total_defects < 0) bad_scenario("total_defects must not be negative");

  scenario.inspection_coverage = require_double(doc, "inspection_coverage", "scenario");
  if (scenario.inspection_coverage < 0.0 || scenario.inspection_coverage > 1.0) {
    bad_scenario("inspection_coverage must be in [0, 1]");
  }
  scenario.inspection_effectiveness = require_double(doc, "inspection_effectiveness", "scenario");
  if (scenario.inspection_effectiveness < 0.0 || scenario.inspection_effectiveness > 1.0) {
    bad_scenario("inspection_effectiveness must be in [0, 1]");
  }

  const std::string assignment = doc.value("type_assignment", "none");
  if (assignment == "none") {
    scenario.type_assignment = TypeAssignment::none;
  } else if (assignment == "uniform") {
    scenario.type_assignment = TypeAssignment::uniform;
  } else {
    bad_scenario("unknown type_assignment '" + assignment + "'");
  }

  if (doc.contains("seed")) {
    const int64_t seed = require_int(doc, "seed", "scenario");
    if (seed < 0) bad_scenario("seed must not be negative");
    scenario.seed = static_cast<uint64_t>(seed);
  }
  return scenario;
}

SyntheticScenario load_scenario(const std::string& path) {
  return parse_scenario(read_file(path));
}

GeneratedRun generate(const SyntheticScenario& scenario, uint64_t seed) {
  Rng rng(seed);
  const int64_t n = scenario.n_parts;
  const int64_t id_width = std::max<int64_t>(2, digits_of(n));

  GeneratedRun run;
  run.dataset.parts.reserve(n);
  for (int64_t i = 0; i < n; ++i) {
    Part part;
    part.id = "P" + padded(i + 1, id_width);
    part.name = part.id;
    part.kind = PartKind::code_class;
    part.loc = scenario.loc_min + static_cast<int64_t>(rng.next_below(
                                      static_cast<uint64_t>(scenario.loc_max - scenario.loc_min + 1)));
    run.dataset.parts.push_back(std::move(part));
  }

  // Inspected subset: the first k of a partial Fisher-Yates shuffle.
  const int64_t inspected_count =
      std::clamp<int64_t>(std::llround(scenario.inspection_coverage * static_cast<double>(n)), 0, n);
  std::vector<int64_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (int64_t i = 0; i < inspected_count; ++i) {
    const int64_t j = i + static_cast<int64_t>(rng.next_below(static_cast<uint64_t>(n - i)));
    std::swap(order[i], order[j]);
    run.dataset.parts[order[i]].inspected = true;
  }

  // Ground-truth allocation: each defect lands in a part drawn from the
  // weight vector, so the per-part counts sum to the total exactly.
  std::vector<double> cumulative(n);
  double total_weight = 0.0;
  for (int64_t i = 0; i < n; ++i) {
    double weight = 1.0;
    if (scenario.ground_truth == GroundTruth::pareto) {
      // U in (0, 1]; inverse-power transform gives a heavy-tailed weight.
      const double u = 1.0 - rng.next_double();
      weight = std::pow(u, -1.0 / scenario.pareto_shape);
    }
    total_weight += weight;
    cumulative[i] = total_weight;
  }

  run.true_defects_per_part.assign(n, 0);
  const int64_t defect_width = std::max<int64_t>(4, digits_of(std::max<int64_t>(scenario.total_defects, 1)));
  for (int64_t d = 0; d < scenario.total_defects; ++d) {
    const double x = rng.next_double() * total_weight;
    const int64_t index = std::distance(
        cumulative.begin(), std::lower_bound(cumulative.begin(), cumulative.end(), x));
    const int64_t part_index = std::min<int64_t>(index, n - 1);
    ++run.true_defects_per_part[part_index];

    const Part& part = run.dataset.parts[part_index];
    const bool found_by_inspection =
        part.inspected && rng.next_double() < scenario.inspection_effectiveness;

    DefectReport defect;
    defect.id = "d" + padded(d + 1, defect_width);
    defect.part_id = part.id;
    defect.severity = Severity::major;
    if (scenario.type_assignment == TypeAssignment::uniform) {
      defect.odc_type = OdcType{kOdcOrder[rng.next_below(kOdcCount)], ""};
    } else {
      defect.odc_type = OdcType{OdcValue::other, ""};
    }
    defect.phase = found_by_inspection ? Phase::inspection : Phase::system_test;
    defect.functional = true;
    defect.accepted = true;
    if (!found_by_inspection) ++run.residual_defects;
    run.dataset.defects.push_back(std::move(defect));
  }

  // One test case per part; effort scales with part size so effort savings
  // reflect how much code the deprioritized half covers.
  for (int64_t i = 0; i < n; ++i) {
    const Part& part = run.dataset.parts[i];
    TestCase test_case;
    test_case.id = "t-" + part.id;
    test_case.part_id = part.id;
    test_case.case_count = 1;
    test_case.effort_minutes = static_cast<double>(*part.loc);
    for (const auto& defect : run.dataset.defects) {
      if (defect.part_id == part.id && defect.phase != Phase::inspection) {
        test_case.revealed_defects.push_back(defect.id);
      }
    }
    run.dataset.test_cases.push_back(std::move(test_case));
  }
  return run;
}

ExperimentSummary run_experiment(const SyntheticScenario& scenario,
                                 const std::vector<ExperimentStrategy>& strategies, int64_t runs,
                                 uint64_t seed) {
  if (runs < 1) throw InputError("invalid_scenario", "runs must be positive");
  if (strategies.empty()) throw InputError("invalid_scenario", "no strategies to run");

  ExperimentSummary summary;
  summary.runs = runs;

  std::map<std::string, double> recall_sum;
  std::map<std::string, int64_t> conclusive;
  std::map<std::string, double> effort_sum;
  for (const auto& strategy : strategies) {
    recall_sum[strategy.id] = 0.0;
    conclusive[strategy.id] = 0;
    effort_sum[strategy.id] = 0.0;
    summary.inconclusive_runs[strategy.id] = 0;
    for (const auto& other : strategies) {
      if (other.id != strategy.id) summary.pairwise_wins[strategy.id][other.id] = 0;
    }
  }

  for (int64_t r = 0; r < runs; ++r) {
    const uint64_t run_seed = Rng::derive(seed, static_cast<uint64_t>(r));
    const GeneratedRun run = generate(scenario, run_seed);
    const auto profile = build_profile(run.dataset);
    const int64_t n = static_cast<int64_t>(run.dataset.parts.size());

    std::map<std::string, std::optional<double>> recall_this_run;
    for (const auto& strategy : strategies) {
      PrioritizationResult prioritization;
      if (strategy.strategy) {
        prioritization = compose_strategy(*strategy.strategy, profile, run.dataset.parts);
      } else {
        // Random baseline: a uniform sample of round(fraction * n) parts,
        // drawn from its own substream.
        Rng pick(Rng::derive(run_seed, stable_hash(strategy.id)));
        const int64_t k = std::clamp<int64_t>(
            std::llround(*strategy.random_fraction * static_cast<double>(n)), 0, n);
        std::vector<int64_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        for (int64_t i = 0; i < k; ++i) {
          const int64_t j = i + static_cast<int64_t>(pick.next_below(static_cast<uint64_t>(n - i)));
          std::swap(order[i], order[j]);
          prioritization.prioritized_parts.push_back(run.dataset.parts[order[i]].id);
        }
        std::sort(prioritization.prioritized_parts.begin(), prioritization.prioritized_parts.end());
      }

      const TestPlan plan = build_plan(run.dataset, prioritization);
      effort_sum[strategy.id] += plan.predicted_effort_saved_fraction;

      if (run.residual_defects == 0) {
        ++summary.inconclusive_runs[strategy.id];
        recall_this_run[strategy.id] = std::nullopt;
        continue;
      }
      const auto missed = missed_defects(run.dataset, plan);
      const double recall = 1.0 - static_cast<double>(missed.size()) /
                                      static_cast<double>(run.residual_defects);
      recall_sum[strategy.id] += recall;
      ++conclusive[strategy.id];
      recall_this_run[strategy.id] = recall;
    }

    for (const auto& a : strategies) {
      for (const auto& b : strategies) {
        if (a.id == b.id) continue;
        const auto& recall_a = recall_this_run[a.id];
        const auto& recall_b = recall_this_run[b.id];
        if (recall_a && recall_b && *recall_a > *recall_b) ++summary.pairwise_wins[a.id][b.id];
      }
    }
  }

  for (const auto& strategy : strategies) {
    summary.mean_recall[strategy.id] =
        conclusive[strategy.id] > 0 ? recall_sum[strategy.id] / conclusive[strategy.id] : 0.0;
    summary.mean_effort_saved[strategy.id] = effort_sum[strategy.id] / static_cast<double>(runs);
  }
  return summary;
}

std::string to_string(GroundTruth kind) {
  return kind == GroundTruth::uniform ? "uniform" : "pareto";
}

std::string to_string(TypeAssignment kind) {
  return kind == TypeAssignment::none ? "none" : "uniform";
}

} // namespace itp
