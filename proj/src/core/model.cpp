#include "core/model.hpp"

#include "core/error.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>
#include <sstream>

namespace heurbench {

namespace {

std::string lower(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

int check_likert(int value, std::string_view what) {
  if (value < 0 || value > 4)
    fail(Errc::InvalidValue,
         std::string(what) + " must be on the 0..4 Likert scale, got " + std::to_string(value));
  return value;
}

} // namespace

SpecificityScore SpecificityScore::of(int value) {
  return SpecificityScore{check_likert(value, "specificity")};
}

Severity Severity::of(int value) { return Severity{check_likert(value, "severity")}; }

std::string_view dimension_code(DimensionKind kind) {
  switch (kind) {
  case DimensionKind::UsageContext:
    return "UC";
  case DimensionKind::LogicalDevice:
    return "LD";
  case DimensionKind::PhysicalDevice:
    return "PD";
  case DimensionKind::UserProfile:
    return "UP";
  }
  return "";
}

std::string_view dimension_name(DimensionKind kind) {
  switch (kind) {
  case DimensionKind::UsageContext:
    return "usage context";
  case DimensionKind::LogicalDevice:
    return "interactive logic device";
  case DimensionKind::PhysicalDevice:
    return "interactive physical device";
  case DimensionKind::UserProfile:
    return "user profile";
  }
  return "";
}

DimensionKind parse_dimension_kind(std::string_view code) {
  std::string up = lower(code);
  if (up == "uc")
    return DimensionKind::UsageContext;
  if (up == "ld")
    return DimensionKind::LogicalDevice;
  if (up == "pd")
    return DimensionKind::PhysicalDevice;
  if (up == "up")
    return DimensionKind::UserProfile;
  fail(Errc::InvalidValue, "unknown dimension kind '" + std::string(code) + "' (expected UC, LD, PD or UP)");
}

void DomainProfile::add_item(DimensionItem item) {
  if (item.label.empty())
    fail(Errc::InvalidValue, "dimension item label must be nonempty");
  std::string folded = lower(item.label);
  for (const auto &existing : items) {
    if (existing.kind == item.kind && lower(existing.label) == folded)
      fail(Errc::DuplicateId, "duplicate " + std::string(dimension_code(item.kind)) +
                                  " item '" + item.label + "'");
  }
  items.push_back(std::move(item));
}

std::vector<const DimensionItem *> DomainProfile::items_of(DimensionKind kind) const {
  std::vector<const DimensionItem *> out;
  for (const auto &item : items)
    if (item.kind == kind)
      out.push_back(&item);
  return out;
}

bool DomainProfile::covers_all_kinds() const {
  for (auto kind : kDimensionKinds)
    if (items_of(kind).empty())
      return false;
  return true;
}

std::string HeuristicId::canonical() const {
  return set_id + ".H" + std::to_string(index);
}

HeuristicId HeuristicId::parse(std::string_view text) {
  auto dot = text.find(".H");
  if (dot == std::string_view::npos || dot == 0)
    fail(Errc::InvalidValue, "malformed heuristic id '" + std::string(text) +
                                 "' (expected <set>.H<index>)");
  std::string_view set = text.substr(0, dot);
  std::string_view idx = text.substr(dot + 2);
  int index = 0;
  auto [ptr, ec] = std::from_chars(idx.data(), idx.data() + idx.size(), index);
  if (ec != std::errc() || ptr != idx.data() + idx.size() || index <= 0)
    fail(Errc::InvalidValue, "malformed heuristic id '" + std::string(text) +
                                 "' (index must be a positive integer)");
  return HeuristicId{std::string(set), index};
}

Origin Origin::merged_from(std::vector<HeuristicId> sources) {
  return {Kind::MergedFrom, std::move(sources)};
}

Origin Origin::generalized_from(std::vector<HeuristicId> sources) {
  return {Kind::GeneralizedFrom, std::move(sources)};
}

Origin Origin::split_from(HeuristicId source) {
  return {Kind::SplitFrom, {std::move(source)}};
}

const Heuristic *HeuristicCatalog::find(const HeuristicId &id) const {
  for (const auto &h : heuristics)
    if (h.id == id)
      return &h;
  return nullptr;
}

Heuristic *HeuristicCatalog::find(const HeuristicId &id) {
  for (auto &h : heuristics)
    if (h.id == id)
      return &h;
  return nullptr;
}

const ConflictNote *HeuristicCatalog::find_conflict(int id) const {
  for (const auto &c : conflicts)
    if (c.id == id)
      return &c;
  return nullptr;
}

ConflictNote *HeuristicCatalog::find_conflict(int id) {
  for (auto &c : conflicts)
    if (c.id == id)
      return &c;
  return nullptr;
}

int HeuristicCatalog::next_new_index() const {
  int max_index = 0;
  for (const auto &h : heuristics)
    if (h.id.set_id == kNewSetId)
      max_index = std::max(max_index, h.id.index);
  return max_index + 1;
}

std::string_view classification_code(Classification c) {
  switch (c) {
  case Classification::Common:
    return "common";
  case Classification::DomainOnly:
    return "domain_only";
  case Classification::ControlOnly:
    return "control_only";
  }
  return "";
}

Classification parse_classification(std::string_view code) {
  std::string folded = lower(code);
  if (folded == "common")
    return Classification::Common;
  if (folded == "domain_only")
    return Classification::DomainOnly;
  if (folded == "control_only")
    return Classification::ControlOnly;
  fail(Errc::InvalidValue, "unknown classification '" + std::string(code) +
                               "' (expected common, domain_only or control_only)");
}

std::vector<std::string> default_control_heuristics() {
  return {"N1", "N2", "N3", "N4", "N5", "N6", "N7", "N8", "N9", "N10"};
}

std::string_view control_heuristic_label(std::string_view token) {
  // Nielsen's ten usability heuristics, the default control set.
  static const std::pair<std::string_view, std::string_view> kLabels[] = {
      {"N1", "Visibility of system status"},
      {"N2", "Match between system and the real world"},
      {"N3", "User control and freedom"},
      {"N4", "Consistency and standards"},
      {"N5", "Error prevention"},
      {"N6", "Recognition rather than recall"},
      {"N7", "Flexibility and efficiency of use"},
      {"N8", "Aesthetic and minimalist design"},
      {"N9", "Help users recognize, diagnose, and recover from errors"},
      {"N10", "Help and documentation"},
  };
  for (const auto &[key, label] : kLabels)
    if (key == token)
      return label;
  return "";
}

ProblemPartition partition_problems(const EvaluationDataset &dataset) {
  ProblemPartition partition;
  for (std::size_t i = 0; i < dataset.problems.size(); ++i) {
    switch (dataset.problems[i].classification) {
    case Classification::Common:
      partition.common.push_back(i);
      partition.domain_all.push_back(i);
      partition.control_all.push_back(i);
      break;
    case Classification::DomainOnly:
      partition.domain_only.push_back(i);
      partition.domain_all.push_back(i);
      break;
    case Classification::ControlOnly:
      partition.control_only.push_back(i);
      partition.control_all.push_back(i);
      break;
    }
  }
  return partition;
}

void ValidationReport::add(std::string subject, std::string rule) {
  violations.push_back({std::move(subject), std::move(rule)});
}

std::string ValidationReport::to_text() const {
  if (ok())
    return "ok\n";
  std::ostringstream out;
  for (const auto &v : violations)
    out << v.subject << ": " << v.rule << "\n";
  return out.str();
}

namespace {

void check_origin(const Heuristic &h, const HeuristicCatalog &catalog, ValidationReport &report) {
  const std::string subject = h.id.canonical();
  std::set<HeuristicId> distinct(h.origin.sources.begin(), h.origin.sources.end());
  switch (h.origin.kind) {
  case Origin::Kind::Found:
  case Origin::Kind::KeptAfterDedup:
    if (!h.origin.sources.empty())
      report.add(subject, "found/kept origin carries no source ids");
    break;
  case Origin::Kind::MergedFrom:
    if (distinct.size() < 2)
      report.add(subject, "merge requires >=2 inputs");
    break;
  case Origin::Kind::GeneralizedFrom:
    if (distinct.size() < 2)
      report.add(subject, "generalization requires >=2 inputs");
    break;
  case Origin::Kind::SplitFrom:
    if (h.origin.sources.size() != 1)
      report.add(subject, "split references exactly 1 input");
    break;
  }
  bool derived = h.origin.kind == Origin::Kind::MergedFrom ||
                 h.origin.kind == Origin::Kind::GeneralizedFrom ||
                 h.origin.kind == Origin::Kind::SplitFrom;
  if (derived && h.id.set_id != kNewSetId)
    report.add(subject, "heuristics created during normalization belong to set NEW");
  if (!derived && h.id.set_id == kNewSetId)
    report.add(subject, "set NEW is reserved for heuristics created during normalization");
  for (const auto &src : h.origin.sources)
    if (!catalog.find(src))
      report.add(subject, "origin references unknown id " + src.canonical());
}

} // namespace

ValidationReport validate_catalog(const HeuristicCatalog &catalog) {
  ValidationReport report;
  std::set<HeuristicId> seen;
  for (const auto &h : catalog.heuristics) {
    if (!seen.insert(h.id).second)
      report.add(h.id.canonical(), "duplicate id " + h.id.canonical());
    if (h.id.set_id.empty() || h.id.index <= 0)
      report.add(h.id.canonical(), "id requires a nonempty set and positive index");
    if (h.name.empty())
      report.add(h.id.canonical(), "name must be nonempty");
    if (h.statement.empty())
      report.add(h.id.canonical(), "statement must be nonempty");
    check_origin(h, catalog, report);
  }
  std::set<int> conflict_ids;
  for (const auto &c : catalog.conflicts) {
    const std::string subject = "conflict " + std::to_string(c.id);
    if (!conflict_ids.insert(c.id).second)
      report.add(subject, "duplicate conflict id");
    std::set<HeuristicId> distinct(c.members.begin(), c.members.end());
    if (c.kind == ConflictNote::Kind::Duplication && distinct.size() < 2)
      report.add(subject, "duplication requires >=2 members");
    if (c.members.empty())
      report.add(subject, "conflict requires >=1 member");
    for (const auto &m : c.members)
      if (!catalog.find(m))
        report.add(subject, "member references unknown id " + m.canonical());
  }
  for (std::size_t i = 0; i < catalog.actions.size(); ++i) {
    const auto &action = catalog.actions[i];
    const std::string subject = "action " + std::to_string(i + 1);
    if (action.rationale.empty())
      report.add(subject, "rationale must be nonempty");
    if (!catalog.find_conflict(action.resolves))
      report.add(subject, "resolves unknown conflict " + std::to_string(action.resolves));
    if (action.kept && !catalog.find(*action.kept))
      report.add(subject, "kept id " + action.kept->canonical() + " not in catalog");
    for (const auto &input : action.inputs)
      if (!catalog.find(input))
        report.add(subject, "input id " + input.canonical() + " not in catalog");
    for (const auto &created : action.new_heuristics)
      if (!catalog.find(created.id))
        report.add(subject, "created id " + created.id.canonical() + " not in catalog");
  }
  return report;
}

namespace {
constexpr std::string_view kMissingSpecificityRule = "missing control specificity";
}

ValidationReport validate_dataset(const EvaluationDataset &dataset) {
  ValidationReport report;
  if (dataset.case_study.empty())
    report.add("dataset", "case study name must be nonempty");
  if (dataset.domain_heuristics.empty())
    report.add("dataset", "domain heuristic list must be nonempty");
  if (dataset.control_heuristics.empty())
    report.add("dataset", "control heuristic list must be nonempty");

  std::set<HeuristicId> domain_ids(dataset.domain_heuristics.begin(),
                                   dataset.domain_heuristics.end());
  if (domain_ids.size() != dataset.domain_heuristics.size())
    report.add("dataset", "duplicate domain heuristic entries");
  std::set<std::string> control_ids(dataset.control_heuristics.begin(),
                                    dataset.control_heuristics.end());
  if (control_ids.size() != dataset.control_heuristics.size())
    report.add("dataset", "duplicate control heuristic entries");

  std::set<std::string> problem_ids;
  for (const auto &p : dataset.problems) {
    const std::string subject = p.id.empty() ? "<problem>" : p.id;
    if (p.id.empty())
      report.add(subject, "problem id must be nonempty");
    else if (!problem_ids.insert(p.id).second)
      report.add(subject, "duplicate problem id " + p.id);
    if (p.description.empty())
      report.add(subject, "description must be nonempty");

    const bool domain_side = p.classification != Classification::ControlOnly;
    const bool control_side = p.classification != Classification::DomainOnly;
    if (domain_side && !p.domain_attribution)
      report.add(subject, "classification requires a domain heuristic attribution");
    if (!domain_side && p.domain_attribution)
      report.add(subject, "control-only problem must not carry a domain attribution");
    if (control_side && !p.control_attribution)
      report.add(subject, "classification requires a control heuristic attribution");
    if (!control_side && p.control_attribution)
      report.add(subject, "domain-only problem must not carry a control attribution");

    if (p.domain_attribution && !domain_ids.count(*p.domain_attribution))
      report.add(subject, "domain attribution " + p.domain_attribution->canonical() +
                              " not in the dataset's heuristic list");
    if (p.control_attribution && !control_ids.count(*p.control_attribution))
      report.add(subject, "control attribution " + *p.control_attribution +
                              " not in the dataset's control list");

    if (p.control_specificity && !control_side)
      report.add(subject, "specificity scores apply only to control-side problems");
    if (!p.control_specificity && control_side)
      report.add(subject, std::string(kMissingSpecificityRule));
  }
  return report;
}

bool only_missing_specificity(const ValidationReport &report) {
  return std::all_of(report.violations.begin(), report.violations.end(),
                     [](const Violation &v) { return v.rule == kMissingSpecificityRule; });
}

} // namespace heurbench
