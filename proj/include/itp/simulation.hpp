#pragma once

#include "itp/config.hpp"
#include "itp/model.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace itp {

enum class GroundTruth { uniform, pareto };
enum class TypeAssignment { none, uniform };

// Recipe for a synthetic inspect-then-test project with a known defect
// distribution, used to probe when each assumption pays off.
struct SyntheticScenario {
  int64_t n_parts = 20;
  int64_t loc_min = 100;
  int64_t loc_max = 1000;
  GroundTruth ground_truth = GroundTruth::uniform;
  double pareto_shape = 1.0; // weight tail for the pareto ground truth
  int64_t total_defects = 1000;
  double inspection_coverage = 0.5;      // fraction of parts that get inspected
  double inspection_effectiveness = 0.5; // chance an inspected part's defect is found
  TypeAssignment type_assignment = TypeAssignment::none;
  uint64_t seed = 0;
};

SyntheticScenario parse_scenario(const std::string& text);
SyntheticScenario load_scenario(const std::string& path);

// One generated project, with the ground truth kept next to the dataset so
// experiments can score recall against it.
struct GeneratedRun {
  Dataset dataset;
  std::vector<int64_t> true_defects_per_part; // indexed like dataset.parts
  int64_t residual_defects = 0;               // defects left for testing to find
};

// Deterministic: the same scenario and seed always produce the same run.
// Every part is a code class with its own single test case (effort
// proportional to LOC), so generated datasets flow through the regular
// profiling/planning/evaluation pipeline.
GeneratedRun generate(const SyntheticScenario& scenario, uint64_t seed);

struct ExperimentSummary {
  int64_t runs = 0;
  // strategy id -> mean recall of the prioritized half over runs with
  // residual defects; runs without any are counted as inconclusive.
  std::map<std::string, double> mean_recall;
  std::map<std::string, double> mean_effort_saved;
  std::map<std::string, int64_t> inconclusive_runs;
  // wins[a][b]: runs where strategy a's recall strictly beats b's.
  std::map<std::string, std::map<std::string, int64_t>> pairwise_wins;
};

// Runs every strategy on `runs` independently generated projects. Run r uses
// the derived seed (seed, r); random-baseline draws come from a further
// substream per strategy, so results do not shift when strategies are added
// or reordered.
ExperimentSummary run_experiment(const SyntheticScenario& scenario,
                                 const std::vector<ExperimentStrategy>& strategies, int64_t runs,
                                 uint64_t seed);

std::string to_string(GroundTruth kind);
std::string to_string(TypeAssignment kind);

} // namespace itp
