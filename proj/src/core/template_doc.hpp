#pragma once

#include "core/model.hpp"

#include <string>
#include <vector>

namespace heurbench {

struct TemplateExample {
  enum class Kind { Compliance, NonCompliance };

  Kind kind = Kind::Compliance;
  std::string text;

  bool operator==(const TemplateExample &) const = default;
};

/// Standard formal description of one selected heuristic. Nine fields, all
/// required; related heuristics may reference discarded catalog entries.
struct HeuristicTemplate {
  HeuristicId heuristic;
  std::string name;
  std::string description;
  std::vector<TemplateExample> examples; // >=1
  std::string benefits;
  std::string problems;
  std::string application_context;
  std::vector<HeuristicId> related_heuristics; // may be empty
  std::vector<std::string> checklist;          // >=1 operational steps

  bool operator==(const HeuristicTemplate &) const = default;
};

/// Field-level checks plus catalog reference resolution. A one-sided example
/// list (all compliance or all non-compliance) is reported as a lint note in
/// the second return list, not a violation.
ValidationReport validate_template(const HeuristicTemplate &t, const HeuristicCatalog &catalog);
std::vector<std::string> lint_template(const HeuristicTemplate &t);

/// Renders the template as a deterministic UTF-8 plain-text document: the
/// nine sections in standard order, one blank line between sections, headers
/// "<Field name>:". Throws InvalidTemplate when validation fails.
std::string render_template(const HeuristicTemplate &t, const HeuristicCatalog &catalog);

/// Inverse of render_template for documents produced by it.
HeuristicTemplate parse_template(const std::string &document);

} // namespace heurbench
