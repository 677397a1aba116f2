#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace itp {

enum class PartKind { code_class, functionality };

enum class Severity { minor, major, crash };

// The eight ODC categories used throughout. `other` may carry a free-text
// detail (e.g. "usability", "documentation") to tell its flavors apart.
enum class OdcValue {
  algorithm_method,
  checking,
  function_class_object,
  assignment_initialization,
  relationship,
  timing_serialization,
  interface_oo_messages,
  other,
};

inline constexpr OdcValue kOdcOrder[] = {
    OdcValue::algorithm_method,
    OdcValue::checking,
    OdcValue::function_class_object,
    OdcValue::assignment_initialization,
    OdcValue::relationship,
    OdcValue::timing_serialization,
    OdcValue::interface_oo_messages,
    OdcValue::other,
};
inline constexpr int kOdcCount = 8;

struct OdcType {
  OdcValue value = OdcValue::other;
  std::string detail; // only meaningful when value == other

  friend bool operator==(const OdcType&, const OdcType&) = default;
  friend auto operator<=>(const OdcType&, const OdcType&) = default;
};

// Selection semantics: a selected type with a detail matches only that
// flavor; a plain one matches every flavor of its category.
bool odc_matches(const OdcType& selected, const OdcType& observed);

enum class Phase { inspection, unit_test, system_test };

struct Part {
  std::string id;
  std::string name;
  PartKind kind = PartKind::code_class;
  std::optional<int64_t> loc; // absent for functionality parts
  bool inspected = false;
};

struct DefectReport {
  std::string id;
  std::string part_id;
  Severity severity = Severity::minor;
  OdcType odc_type;
  Phase phase = Phase::inspection;
  bool functional = true; // false for usability/maintainability observations
  bool accepted = true;   // triage outcome
  std::string description;
};

struct ReadingLog {
  std::string inspector_id;
  std::vector<std::string> parts_read;
  int64_t loc_read = 0;
  int64_t effort_minutes = 0;
};

struct TestCase {
  std::string id;
  std::string part_id; // the functionality it exercises
  int64_t case_count = 1;
  std::optional<double> effort_minutes;
  std::vector<OdcType> addressed_types;
  std::vector<std::string> revealed_defects;
};

struct Dataset {
  std::vector<Part> parts;
  std::vector<DefectReport> defects;
  std::vector<ReadingLog> reading_logs;
  std::vector<TestCase> test_cases;
  std::map<std::string, std::string> traceability; // code class id -> functionality id

  const Part* find_part(const std::string& id) const;
};

// One broken invariant or dangling reference. Violations are data, not
// failures: validate_dataset never throws on bad datasets.
struct Violation {
  std::string code; // machine-readable, e.g. "unresolved_reference"
  std::string id;   // offending record id
  std::string message;

  friend bool operator==(const Violation&, const Violation&) = default;
  friend auto operator<=>(const Violation&, const Violation&) = default;
};

// Returns every violation, sorted by (code, id, message) so the result is a
// canonical multiset independent of record order. Empty result = valid.
std::vector<Violation> validate_dataset(const Dataset& dataset);

// Enum <-> string names used by every serialized format.
std::string to_string(PartKind kind);
std::string to_string(Severity severity);
std::string to_string(Phase phase);
std::string to_string(OdcValue value);
// Compact form: "checking", "other", "other:usability".
std::string to_string(const OdcType& type);

PartKind part_kind_from_string(const std::string& text);
Severity severity_from_string(const std::string& text);
Phase phase_from_string(const std::string& text);
OdcValue odc_value_from_string(const std::string& text);
OdcType odc_type_from_string(const std::string& text);

} // namespace itp
