#include "itp/evaluation.hpp"

#include "itp/errors.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace itp {
namespace {

bool is_test_phase(const DefectReport& defect) { return defect.phase != Phase::inspection; }

std::string format_share(double value) {
  std::ostringstream out;
  out.precision(3);
  out << std::fixed << value;
  return out.str();
}

// Proportional size of the scope under the configured basis. Falls back to
// case counts when efforts are incomplete; the fallback is named in `note`.
double proportional_share(const Dataset& dataset, const std::vector<std::string>& scope,
                          const std::vector<std::string>& expanded, ShareBasis basis,
                          std::string& note) {
  if (basis == ShareBasis::part_count) {
    if (dataset.parts.empty()) return 0.0;
    return static_cast<double>(scope.size()) / static_cast<double>(dataset.parts.size());
  }

  const std::set<std::string> in_scope(expanded.begin(), expanded.end());
  if (basis == ShareBasis::effort) {
    const bool complete = std::all_of(dataset.test_cases.begin(), dataset.test_cases.end(),
                                      [](const TestCase& c) { return c.effort_minutes.has_value(); });
    if (complete) {
      double total = 0.0;
      double in = 0.0;
      for (const auto& test_case : dataset.test_cases) {
        total += *test_case.effort_minutes;
        if (in_scope.count(test_case.part_id)) in += *test_case.effort_minutes;
      }
      if (total > 0.0) return in / total;
      note = "total test effort is zero; share uses case counts";
    } else {
      note = "test efforts are incomplete; share uses case counts";
    }
  }

  int64_t total = 0;
  int64_t in = 0;
  for (const auto& test_case : dataset.test_cases) {
    total += test_case.case_count;
    if (in_scope.count(test_case.part_id)) in += test_case.case_count;
  }
  if (total <= 0) return 0.0;
  return static_cast<double>(in) / static_cast<double>(total);
}

} // namespace

std::vector<MissedDefect> missed_defects(const Dataset& dataset, const TestPlan& plan) {
  const std::set<std::string> deprioritized(plan.deprioritized.begin(), plan.deprioritized.end());

  std::map<std::string, std::vector<std::string>> revealing;
  for (const auto& test_case : dataset.test_cases) {
    for (const auto& defect_id : test_case.revealed_defects) {
      revealing[defect_id].push_back(test_case.id);
    }
  }

  std::vector<MissedDefect> missed;
  for (const auto& defect : dataset.defects) {
    if (!is_test_phase(defect) || !defect.accepted) continue;
    auto found = revealing.find(defect.id);
    if (found == revealing.end()) {
      throw PipelineError("unlinked_defect",
                          "test defect '" + defect.id + "' is revealed by no test case");
    }
    const bool all_deprioritized =
        std::all_of(found->second.begin(), found->second.end(),
                    [&](const std::string& id) { return deprioritized.count(id) > 0; });
    if (all_deprioritized) {
      missed.push_back({defect.id, defect.functional, defect.odc_type, found->second});
    }
  }
  std::sort(missed.begin(), missed.end(),
            [](const MissedDefect& a, const MissedDefect& b) { return a.defect_id < b.defect_id; });
  return missed;
}

AssumptionVerdict assumption_verdict(const Dataset& dataset,
                                     const InspectionDefectProfile& profile,
                                     const Assumption& assumption, const VerdictConfig& config) {
  AssumptionVerdict verdict;
  verdict.assumption_id = assumption.id.empty() ? to_string(assumption.kind) : assumption.id;
  verdict.kind = assumption.kind;

  const bool scope_kind = assumption.kind == AssumptionKind::equal_distribution ||
                          assumption.kind == AssumptionKind::pareto_parts;

  std::vector<const DefectReport*> relevant;
  for (const auto& defect : dataset.defects) {
    if (!is_test_phase(defect) || !defect.accepted) continue;
    if (scope_kind && !defect.functional) continue;
    relevant.push_back(&defect);
  }
  verdict.relevant_defects = static_cast<int64_t>(relevant.size());

  if (verdict.relevant_defects < config.min_test_defects) {
    verdict.verdict = Verdict::inconclusive;
    verdict.rationale = "only " + std::to_string(verdict.relevant_defects) +
                        (scope_kind ? " functional" : "") + " test defects, need at least " +
                        std::to_string(config.min_test_defects);
    return verdict;
  }

  if (scope_kind) {
    const auto scope = prioritize_parts(assumption, profile, dataset.parts);
    const auto expanded = expand_scope(dataset, scope);
    const std::set<std::string> in_scope(expanded.begin(), expanded.end());

    int64_t inside = 0;
    for (const auto* defect : relevant) {
      if (in_scope.count(defect->part_id)) ++inside;
    }
    verdict.observed = static_cast<double>(inside) / static_cast<double>(relevant.size());

    std::string note;
    verdict.expected =
        proportional_share(dataset, scope, expanded, config.share_basis, note);

    if (verdict.observed > verdict.expected) {
      verdict.verdict = Verdict::supported;
    } else if (verdict.observed < verdict.expected) {
      verdict.verdict = Verdict::refuted;
    } else {
      verdict.verdict = Verdict::inconclusive;
    }
    verdict.rationale = std::to_string(inside) + " of " + std::to_string(relevant.size()) +
                        " functional test defects fell in the prioritized scope (share " +
                        format_share(verdict.observed) + " vs proportional " +
                        format_share(verdict.expected) + " by " + to_string(config.share_basis) +
                        ")";
    if (!note.empty()) verdict.rationale += "; " + note;
    return verdict;
  }

  const auto types = prioritize_types(assumption, profile);
  int64_t matched = 0;
  for (const auto* defect : relevant) {
    const bool hit = std::any_of(types.begin(), types.end(), [&](const OdcType& selected) {
      return odc_matches(selected, defect->odc_type);
    });
    if (hit) ++matched;
  }
  verdict.observed = static_cast<double>(matched) / static_cast<double>(relevant.size());
  verdict.expected = config.type_overlap_min;
  verdict.verdict = verdict.observed >= verdict.expected ? Verdict::supported : Verdict::refuted;
  verdict.rationale = std::to_string(matched) + " of " + std::to_string(relevant.size()) +
                      " test defects match the prioritized types (overlap " +
                      format_share(verdict.observed) + ", minimum " +
                      format_share(verdict.expected) + ")";
  return verdict;
}

EvaluationResult evaluate(const Dataset& dataset, const PlanDocument& doc,
                          const VerdictConfig& config) {
  EvaluationResult result;

  auto savings = predicted_savings(dataset, doc.plan.prioritized, doc.plan.deprioritized);
  result.effort_saved_fraction = savings.effort_saved_fraction;
  result.cases_omitted_fraction = savings.cases_omitted_fraction;
  result.warnings = std::move(savings.warnings);

  result.missed = missed_defects(dataset, doc.plan);

  for (const auto& defect : dataset.defects) {
    if (is_test_phase(defect) && defect.accepted) ++result.test_defects_total;
  }
  if (result.test_defects_total == 0) {
    result.warnings.push_back("no test defects recorded; assumption verdicts are inconclusive");
  }

  const auto profile = build_profile(dataset);
  for (const auto& assumption : doc.assumptions) {
    result.verdicts.push_back(assumption_verdict(dataset, profile, assumption, config));
  }
  return result;
}

std::string to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::supported: return "supported";
    case Verdict::refuted: return "refuted";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

} // namespace itp
