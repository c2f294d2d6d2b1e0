#pragma once

#include "core/rational.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace heurbench {

/// 5-level Likert value used for all specificity judgements: 0 means not
/// specific at all, 4 means completely specific.
struct SpecificityScore {
  int value = 0;

  static SpecificityScore of(int value); // throws outside 0..4
  bool operator==(const SpecificityScore &) const = default;
  auto operator<=>(const SpecificityScore &) const = default;
};

/// 5-level Likert severity of a usability problem (0 cosmetic .. 4 blocking).
struct Severity {
  int value = 0;

  static Severity of(int value); // throws outside 0..4
  bool operator==(const Severity &) const = default;
};

/// The four characteristic dimensions used to describe a domain.
enum class DimensionKind { UsageContext, LogicalDevice, PhysicalDevice, UserProfile };

inline constexpr std::array<DimensionKind, 4> kDimensionKinds = {
    DimensionKind::UsageContext,
    DimensionKind::LogicalDevice,
    DimensionKind::PhysicalDevice,
    DimensionKind::UserProfile,
};

std::string_view dimension_code(DimensionKind kind); // "UC" / "LD" / "PD" / "UP"
std::string_view dimension_name(DimensionKind kind);
DimensionKind parse_dimension_kind(std::string_view code);

struct DimensionItem {
  DimensionKind kind = DimensionKind::UsageContext;
  std::string label;
  SpecificityScore initial_specificity;

  bool operator==(const DimensionItem &) const = default;
};

/// The domain under study: its name, the search keywords collected for the
/// literature search, and the items of the four characteristic dimensions.
struct DomainProfile {
  std::string domain_name;
  std::vector<std::string> keywords;
  std::vector<DimensionItem> items;

  /// Enforces case-insensitive label uniqueness within a kind.
  void add_item(DimensionItem item);
  std::vector<const DimensionItem *> items_of(DimensionKind kind) const;
  bool covers_all_kinds() const;
};

struct HeuristicId {
  std::string set_id; // e.g. "S1"; the reserved set "NEW" holds heuristics
                      // created during normalization
  int index = 0;      // positive

  /// Canonical rendering, e.g. "S1.H3" or "NEW.H1".
  std::string canonical() const;
  static HeuristicId parse(std::string_view text);

  bool operator==(const HeuristicId &) const = default;
  auto operator<=>(const HeuristicId &) const = default;
};

inline constexpr std::string_view kNewSetId = "NEW";

struct Origin {
  enum class Kind { Found, KeptAfterDedup, MergedFrom, GeneralizedFrom, SplitFrom };

  Kind kind = Kind::Found;
  std::vector<HeuristicId> sources; // >=2 for Merged/Generalized, ==1 for Split

  static Origin found() { return {}; }
  static Origin kept_after_dedup() { return {Kind::KeptAfterDedup, {}}; }
  static Origin merged_from(std::vector<HeuristicId> sources);
  static Origin generalized_from(std::vector<HeuristicId> sources);
  static Origin split_from(HeuristicId source);

  bool operator==(const Origin &) const = default;
};

enum class HeuristicStatus { Denormalized, Normalized, Selected, Discarded };

struct Heuristic {
  HeuristicId id;
  std::string name;
  std::string statement;
  SpecificityScore isi; // initial specificity index
  Origin origin;
  HeuristicStatus status = HeuristicStatus::Denormalized;

  bool operator==(const Heuristic &) const = default;
};

/// Researcher-declared duplication or overlap among catalog heuristics.
struct ConflictNote {
  enum class Kind { Duplication, Overlap };

  int id = 0; // assigned at declaration, unique within the catalog
  Kind kind = Kind::Duplication;
  std::vector<HeuristicId> members; // >=2 for Duplication, >=1 for Overlap
  std::string note;
  bool resolved = false;

  bool operator==(const ConflictNote &) const = default;
};

/// One entry of the append-only normalization log.
struct NormalizationAction {
  enum class Kind { KeepOneDiscardRest, MergeReformulate, GroupUnderGeneral, SplitIntoSeveral };

  Kind kind = Kind::KeepOneDiscardRest;
  std::optional<HeuristicId> kept;       // KeepOneDiscardRest only
  std::vector<HeuristicId> inputs;       // discarded / merged / grouped / split inputs
  std::vector<Heuristic> new_heuristics; // fresh "NEW" heuristics created by the action
  std::string rationale;
  int resolves = 0; // conflict id this action settles

  bool operator==(const NormalizationAction &) const = default;
};

struct HeuristicCatalog {
  std::vector<Heuristic> heuristics;
  std::vector<ConflictNote> conflicts;
  std::vector<NormalizationAction> actions; // append-only
  int next_conflict_id = 1;

  const Heuristic *find(const HeuristicId &id) const;
  Heuristic *find(const HeuristicId &id);
  const ConflictNote *find_conflict(int id) const;
  ConflictNote *find_conflict(int id);
  int next_new_index() const; // next free index in the "NEW" set

  bool operator==(const HeuristicCatalog &) const = default;
};

enum class Classification { Common, DomainOnly, ControlOnly };

std::string_view classification_code(Classification c);
Classification parse_classification(std::string_view code);

/// One usability problem recorded during the validation experiment.
struct ProblemRecord {
  std::string id;
  std::string description;
  Classification classification = Classification::Common;
  std::optional<HeuristicId> domain_attribution;
  std::optional<std::string> control_attribution;
  Severity severity;
  std::optional<SpecificityScore> control_specificity;

  bool operator==(const ProblemRecord &) const = default;
};

struct EvaluationDataset {
  std::string case_study;
  std::vector<HeuristicId> domain_heuristics;  // the selected heuristics
  std::vector<std::string> control_heuristics; // opaque tokens, default N1..N10
  std::vector<ProblemRecord> problems;

  bool operator==(const EvaluationDataset &) const = default;
};

/// Default control set: Nielsen's ten heuristics as tokens N1..N10.
std::vector<std::string> default_control_heuristics();
std::string_view control_heuristic_label(std::string_view token); // "" if unknown

/// Index sets over EvaluationDataset::problems. domain_all / control_all are
/// the unions with the common set; the three base sets are pairwise disjoint.
struct ProblemPartition {
  std::vector<std::size_t> common;       // found by both groups
  std::vector<std::size_t> domain_only;  // found only with the domain heuristics
  std::vector<std::size_t> control_only; // found only with the control heuristics
  std::vector<std::size_t> domain_all;   // domain_only + common
  std::vector<std::size_t> control_all;  // control_only + common
};

ProblemPartition partition_problems(const EvaluationDataset &dataset);

struct Violation {
  std::string subject; // offending id / field
  std::string rule;

  bool operator==(const Violation &) const = default;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  void add(std::string subject, std::string rule);
  std::string to_text() const;
};

ValidationReport validate_catalog(const HeuristicCatalog &catalog);

/// Structural dataset checks: attribution coherence, resolvable references,
/// unique problem ids, nonempty heuristic lists. A missing control-side
/// specificity is reported as a violation but tolerated downstream (the
/// specificity rate simply becomes unavailable), so callers that accept
/// partial data should test `only_missing_specificity`.
ValidationReport validate_dataset(const EvaluationDataset &dataset);
bool only_missing_specificity(const ValidationReport &report);

} // namespace heurbench
