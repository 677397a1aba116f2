#pragma once

#include "itp/config.hpp"
#include "itp/model.hpp"
#include "itp/planning.hpp"
#include "itp/profiling.hpp"

#include <string>
#include <vector>

namespace itp {

enum class Verdict { supported, refuted, inconclusive };

// One assumption judged against the recorded test defects. For scope
// assumptions `observed` is the share of functional test defects inside the
// selected scope and `expected` its proportional share; for type assumptions
// `observed` is the overlap with the selected types and `expected` the
// configured minimum.
struct AssumptionVerdict {
  std::string assumption_id;
  AssumptionKind kind = AssumptionKind::equal_distribution;
  Verdict verdict = Verdict::inconclusive;
  double observed = 0.0;
  double expected = 0.0;
  int64_t relevant_defects = 0;
  std::string rationale;
};

// A test defect every revealing test case of which was deprioritized: the
// defect the plan would have missed (or found late).
struct MissedDefect {
  std::string defect_id;
  bool functional = true;
  OdcType odc_type;
  std::vector<std::string> revealing_cases;
};

struct EvaluationResult {
  double effort_saved_fraction = 0.0;
  double cases_omitted_fraction = 0.0;
  int64_t test_defects_total = 0;
  std::vector<MissedDefect> missed;
  std::vector<AssumptionVerdict> verdicts;
  std::vector<std::string> warnings;
};

// Test-phase defects whose every revealing case sits in the deprioritized
// half, ordered by defect id. A test defect no case reveals raises
// unlinked_defect.
std::vector<MissedDefect> missed_defects(const Dataset& dataset, const TestPlan& plan);

// Judges one assumption. Scope assumptions (equal_distribution,
// pareto_parts) re-derive their own part selection from the profile and
// compare the scope's share of functional test defects against its
// proportional share under config.share_basis. Type assumptions compare the
// overlap of test defects with the selected types against
// config.type_overlap_min. Fewer than config.min_test_defects relevant
// defects: inconclusive.
AssumptionVerdict assumption_verdict(const Dataset& dataset,
                                     const InspectionDefectProfile& profile,
                                     const Assumption& assumption, const VerdictConfig& config);

// Recomputes the plan's savings, finds the missed defects, and judges every
// assumption the plan rests on.
EvaluationResult evaluate(const Dataset& dataset, const PlanDocument& doc,
                          const VerdictConfig& config);

std::string to_string(Verdict verdict);

} // namespace itp
