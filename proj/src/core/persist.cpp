#include "core/persist.hpp"

#include "core/error.hpp"

#include <cstdio>
#include <fcntl.h>
#include <fstream>
#include <sys/file.h>
#include <unistd.h>

namespace heurbench {

using nlohmann::json;

namespace {

// ---- writers ----

json rational_json(const Rational &value) { return value.to_fraction_string(); }

json optional_rational_json(const std::optional<Rational> &value) {
  return value ? json(value->to_fraction_string()) : json(nullptr);
}

std::string_view status_code(HeuristicStatus status) {
  switch (status) {
  case HeuristicStatus::Denormalized:
    return "denormalized";
  case HeuristicStatus::Normalized:
    return "normalized";
  case HeuristicStatus::Selected:
    return "selected";
  case HeuristicStatus::Discarded:
    return "discarded";
  }
  return "";
}

std::string_view origin_code(Origin::Kind kind) {
  switch (kind) {
  case Origin::Kind::Found:
    return "found";
  case Origin::Kind::KeptAfterDedup:
    return "kept_after_dedup";
  case Origin::Kind::MergedFrom:
    return "merged_from";
  case Origin::Kind::GeneralizedFrom:
    return "generalized_from";
  case Origin::Kind::SplitFrom:
    return "split_from";
  }
  return "";
}

std::string_view action_code(NormalizationAction::Kind kind) {
  switch (kind) {
  case NormalizationAction::Kind::KeepOneDiscardRest:
    return "keep_one_discard_rest";
  case NormalizationAction::Kind::MergeReformulate:
    return "merge_reformulate";
  case NormalizationAction::Kind::GroupUnderGeneral:
    return "group_under_general";
  case NormalizationAction::Kind::SplitIntoSeveral:
    return "split_into_several";
  }
  return "";
}

json ids_json(const std::vector<HeuristicId> &ids) {
  json out = json::array();
  for (const auto &id : ids)
    out.push_back(id.canonical());
  return out;
}

json heuristic_json(const Heuristic &h) {
  return {
      {"id", h.id.canonical()},
      {"name", h.name},
      {"statement", h.statement},
      {"isi", h.isi.value},
      {"origin", {{"kind", std::string(origin_code(h.origin.kind))},
                  {"sources", ids_json(h.origin.sources)}}},
      {"status", std::string(status_code(h.status))},
  };
}

json rate_json(const Rate &rate) {
  return {
      {"available", rate.available},
      {"reason", rate.available ? json(nullptr) : json(rate.reason)},
      {"value", rate.available ? json(rate.value.to_fraction_string()) : json(nullptr)},
      {"domain_component", optional_rational_json(rate.domain_component)},
      {"control_component", optional_rational_json(rate.control_component)},
  };
}

json dispersion_json(const DispersionRate &rate) {
  return {
      {"available", rate.available},
      {"reason", rate.available ? json(nullptr) : json(rate.reason)},
      {"domain_variance", rational_json(rate.domain_variance)},
      {"control_variance", rational_json(rate.control_variance)},
      {"value_squared", rational_json(rate.value_squared)},
  };
}

json report_json(const IndicatorReport &report) {
  json counts = {
      {"common", report.counts.common},
      {"domain_only", report.counts.domain_only},
      {"control_only", report.counts.control_only},
      {"domain_all", report.counts.domain_all},
      {"control_all", report.counts.control_all},
      {"total", report.counts.total},
  };
  auto count_list = [](const std::vector<HeuristicCount> &entries) {
    json out = json::array();
    for (const auto &entry : entries)
      out.push_back({{"heuristic", entry.heuristic}, {"count", entry.count}});
    return out;
  };
  return {
      {"counts", counts},
      {"phi", rate_json(report.unique_rate)},
      {"phi_star", rate_json(report.unique_rate_approx)},
      {"delta", dispersion_json(report.dispersion_rate)},
      {"lambda", rate_json(report.severity_rate)},
      {"lambda_star", rate_json(report.severity_rate_approx)},
      {"epsilon", rate_json(report.specificity_rate)},
      {"domain_problem_counts", count_list(report.domain_problem_counts)},
      {"control_problem_counts", count_list(report.control_problem_counts)},
  };
}

json advice_json(const RefinementAdvice &advice) {
  json triggered = json::array();
  for (const auto &rule : advice.triggered) {
    triggered.push_back({
        {"indicator", std::string(indicator_code(rule.indicator))},
        {"approximate", rule.approximate},
        {"value", rule.value},
        {"value_display", rule.value_display},
        {"hypotheses", rule.hypotheses},
        {"revisit_stages", rule.revisit_stages},
    });
  }
  return {
      {"triggered", triggered},
      {"verdict", advice.verdict == RefinementAdvice::Verdict::NoRefinementSignaled
                      ? "no_refinement_signaled"
                      : "refinement_suggested"},
      {"notes", advice.notes},
  };
}

// ---- path-tracked readers ----

[[noreturn]] void bad(const std::string &path, const std::string &what) {
  fail(Errc::SchemaViolation, path + ": " + what);
}

const json &member(const json &j, const char *key, const std::string &path) {
  if (!j.is_object())
    bad(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end())
    bad(path + "." + key, "missing");
  return *it;
}

std::string get_string(const json &j, const char *key, const std::string &path) {
  const json &v = member(j, key, path);
  if (!v.is_string())
    bad(path + "." + key, "expected a string");
  return v.get<std::string>();
}

std::int64_t get_int(const json &j, const char *key, const std::string &path) {
  const json &v = member(j, key, path);
  if (!v.is_number_integer())
    bad(path + "." + key, "expected an integer");
  return v.get<std::int64_t>();
}

bool get_bool(const json &j, const char *key, const std::string &path) {
  const json &v = member(j, key, path);
  if (!v.is_boolean())
    bad(path + "." + key, "expected a boolean");
  return v.get<bool>();
}

const json &get_array(const json &j, const char *key, const std::string &path) {
  const json &v = member(j, key, path);
  if (!v.is_array())
    bad(path + "." + key, "expected an array");
  return v;
}

Rational get_rational(const json &j, const char *key, const std::string &path) {
  std::string text = get_string(j, key, path);
  try {
    return Rational::parse(text);
  } catch (const Error &) {
    bad(path + "." + key, "expected a rational 'n/d', got '" + text + "'");
  }
}

HeuristicId parse_id(const std::string &text, const std::string &path) {
  try {
    return HeuristicId::parse(text);
  } catch (const Error &) {
    bad(path, "malformed heuristic id '" + text + "'");
  }
}

std::vector<HeuristicId> get_ids(const json &j, const char *key, const std::string &path) {
  std::vector<HeuristicId> ids;
  const json &arr = get_array(j, key, path);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string item_path = path + "." + key + "[" + std::to_string(i) + "]";
    if (!arr[i].is_string())
      bad(item_path, "expected a string");
    ids.push_back(parse_id(arr[i].get<std::string>(), item_path));
  }
  return ids;
}

int get_likert(const json &j, const char *key, const std::string &path) {
  std::int64_t value = get_int(j, key, path);
  if (value < 0 || value > 4)
    bad(path + "." + key, "Likert value out of range 0..4");
  return static_cast<int>(value);
}

Heuristic heuristic_from_json(const json &j, const std::string &path) {
  Heuristic h;
  h.id = parse_id(get_string(j, "id", path), path + ".id");
  h.name = get_string(j, "name", path);
  h.statement = get_string(j, "statement", path);
  h.isi = SpecificityScore{get_likert(j, "isi", path)};
  const json &origin = member(j, "origin", path);
  std::string kind = get_string(origin, "kind", path + ".origin");
  h.origin.sources = get_ids(origin, "sources", path + ".origin");
  if (kind == "found")
    h.origin.kind = Origin::Kind::Found;
  else if (kind == "kept_after_dedup")
    h.origin.kind = Origin::Kind::KeptAfterDedup;
  else if (kind == "merged_from")
    h.origin.kind = Origin::Kind::MergedFrom;
  else if (kind == "generalized_from")
    h.origin.kind = Origin::Kind::GeneralizedFrom;
  else if (kind == "split_from")
    h.origin.kind = Origin::Kind::SplitFrom;
  else
    bad(path + ".origin.kind", "unknown origin '" + kind + "'");
  std::string status = get_string(j, "status", path);
  if (status == "denormalized")
    h.status = HeuristicStatus::Denormalized;
  else if (status == "normalized")
    h.status = HeuristicStatus::Normalized;
  else if (status == "selected")
    h.status = HeuristicStatus::Selected;
  else if (status == "discarded")
    h.status = HeuristicStatus::Discarded;
  else
    bad(path + ".status", "unknown status '" + status + "'");
  return h;
}

Rate rate_from_json(const json &j, const std::string &path) {
  Rate rate;
  rate.available = get_bool(j, "available", path);
  const json &reason = member(j, "reason", path);
  if (!reason.is_null())
    rate.reason = reason.get<std::string>();
  if (rate.available)
    rate.value = get_rational(j, "value", path);
  const json &domain = member(j, "domain_component", path);
  if (!domain.is_null())
    rate.domain_component = Rational::parse(domain.get<std::string>());
  const json &control = member(j, "control_component", path);
  if (!control.is_null())
    rate.control_component = Rational::parse(control.get<std::string>());
  return rate;
}

DispersionRate dispersion_from_json(const json &j, const std::string &path) {
  DispersionRate rate;
  rate.available = get_bool(j, "available", path);
  const json &reason = member(j, "reason", path);
  if (!reason.is_null())
    rate.reason = reason.get<std::string>();
  rate.domain_variance = get_rational(j, "domain_variance", path);
  rate.control_variance = get_rational(j, "control_variance", path);
  rate.value_squared = get_rational(j, "value_squared", path);
  return rate;
}

IndicatorReport report_from_json(const json &j, const std::string &path) {
  IndicatorReport report;
  const json &counts = member(j, "counts", path);
  report.counts.common = get_int(counts, "common", path + ".counts");
  report.counts.domain_only = get_int(counts, "domain_only", path + ".counts");
  report.counts.control_only = get_int(counts, "control_only", path + ".counts");
  report.counts.domain_all = get_int(counts, "domain_all", path + ".counts");
  report.counts.control_all = get_int(counts, "control_all", path + ".counts");
  report.counts.total = get_int(counts, "total", path + ".counts");
  report.unique_rate = rate_from_json(member(j, "phi", path), path + ".phi");
  report.unique_rate_approx = rate_from_json(member(j, "phi_star", path), path + ".phi_star");
  report.dispersion_rate = dispersion_from_json(member(j, "delta", path), path + ".delta");
  report.severity_rate = rate_from_json(member(j, "lambda", path), path + ".lambda");
  report.severity_rate_approx =
      rate_from_json(member(j, "lambda_star", path), path + ".lambda_star");
  report.specificity_rate = rate_from_json(member(j, "epsilon", path), path + ".epsilon");
  for (const char *key : {"domain_problem_counts", "control_problem_counts"}) {
    const json &arr = get_array(j, key, path);
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string item_path = path + "." + key + "[" + std::to_string(i) + "]";
      HeuristicCount entry;
      entry.heuristic = get_string(arr[i], "heuristic", item_path);
      entry.count = get_int(arr[i], "count", item_path);
      (key[0] == 'd' ? report.domain_problem_counts : report.control_problem_counts)
          .push_back(std::move(entry));
    }
  }
  return report;
}

RefinementAdvice advice_from_json(const json &j, const std::string &path) {
  RefinementAdvice advice;
  const json &triggered = get_array(j, "triggered", path);
  for (std::size_t i = 0; i < triggered.size(); ++i) {
    const std::string item_path = path + ".triggered[" + std::to_string(i) + "]";
    const json &t = triggered[i];
    TriggeredRule rule;
    std::string code = get_string(t, "indicator", item_path);
    if (code == "phi")
      rule.indicator = IndicatorKind::UniqueRate;
    else if (code == "delta")
      rule.indicator = IndicatorKind::DispersionRate;
    else if (code == "epsilon")
      rule.indicator = IndicatorKind::SpecificityRate;
    else if (code == "lambda")
      rule.indicator = IndicatorKind::SeverityRate;
    else
      bad(item_path + ".indicator", "unknown indicator '" + code + "'");
    rule.approximate = get_bool(t, "approximate", item_path);
    const json &value = member(t, "value", item_path);
    if (!value.is_number())
      bad(item_path + ".value", "expected a number");
    rule.value = value.get<double>();
    rule.value_display = get_string(t, "value_display", item_path);
    for (const json &h : get_array(t, "hypotheses", item_path))
      rule.hypotheses.push_back(h.get<std::string>());
    for (const json &s : get_array(t, "revisit_stages", item_path))
      rule.revisit_stages.push_back(s.get<int>());
    advice.triggered.push_back(std::move(rule));
  }
  std::string verdict = get_string(j, "verdict", path);
  if (verdict == "no_refinement_signaled")
    advice.verdict = RefinementAdvice::Verdict::NoRefinementSignaled;
  else if (verdict == "refinement_suggested")
    advice.verdict = RefinementAdvice::Verdict::RefinementSuggested;
  else
    bad(path + ".verdict", "unknown verdict '" + verdict + "'");
  for (const json &note : get_array(j, "notes", path))
    advice.notes.push_back(note.get<std::string>());
  return advice;
}

} // namespace

json catalog_to_json(const HeuristicCatalog &catalog) {
  json heuristics = json::array();
  for (const auto &h : catalog.heuristics)
    heuristics.push_back(heuristic_json(h));
  json conflicts = json::array();
  for (const auto &c : catalog.conflicts) {
    conflicts.push_back({
        {"id", c.id},
        {"kind", c.kind == ConflictNote::Kind::Duplication ? "duplication" : "overlap"},
        {"members", ids_json(c.members)},
        {"note", c.note},
        {"resolved", c.resolved},
    });
  }
  json actions = json::array();
  for (const auto &a : catalog.actions) {
    json created = json::array();
    for (const auto &h : a.new_heuristics)
      created.push_back(heuristic_json(h));
    actions.push_back({
        {"kind", std::string(action_code(a.kind))},
        {"kept", a.kept ? json(a.kept->canonical()) : json(nullptr)},
        {"inputs", ids_json(a.inputs)},
        {"new_heuristics", created},
        {"rationale", a.rationale},
        {"resolves", a.resolves},
    });
  }
  return {
      {"heuristics", heuristics},
      {"conflicts", conflicts},
      {"actions", actions},
      {"next_conflict_id", catalog.next_conflict_id},
  };
}

HeuristicCatalog catalog_from_json(const json &doc) {
  const std::string path = "catalog";
  HeuristicCatalog catalog;
  const json &heuristics = get_array(doc, "heuristics", path);
  for (std::size_t i = 0; i < heuristics.size(); ++i)
    catalog.heuristics.push_back(
        heuristic_from_json(heuristics[i], path + ".heuristics[" + std::to_string(i) + "]"));
  const json &conflicts = get_array(doc, "conflicts", path);
  for (std::size_t i = 0; i < conflicts.size(); ++i) {
    const std::string item_path = path + ".conflicts[" + std::to_string(i) + "]";
    const json &c = conflicts[i];
    ConflictNote note;
    note.id = static_cast<int>(get_int(c, "id", item_path));
    std::string kind = get_string(c, "kind", item_path);
    if (kind == "duplication")
      note.kind = ConflictNote::Kind::Duplication;
    else if (kind == "overlap")
      note.kind = ConflictNote::Kind::Overlap;
    else
      bad(item_path + ".kind", "unknown conflict kind '" + kind + "'");
    note.members = get_ids(c, "members", item_path);
    note.note = get_string(c, "note", item_path);
    note.resolved = get_bool(c, "resolved", item_path);
    catalog.conflicts.push_back(std::move(note));
  }
  const json &actions = get_array(doc, "actions", path);
  for (std::size_t i = 0; i < actions.size(); ++i) {
    const std::string item_path = path + ".actions[" + std::to_string(i) + "]";
    const json &a = actions[i];
    NormalizationAction action;
    std::string kind = get_string(a, "kind", item_path);
    if (kind == "keep_one_discard_rest")
      action.kind = NormalizationAction::Kind::KeepOneDiscardRest;
    else if (kind == "merge_reformulate")
      action.kind = NormalizationAction::Kind::MergeReformulate;
    else if (kind == "group_under_general")
      action.kind = NormalizationAction::Kind::GroupUnderGeneral;
    else if (kind == "split_into_several")
      action.kind = NormalizationAction::Kind::SplitIntoSeveral;
    else
      bad(item_path + ".kind", "unknown action kind '" + kind + "'");
    const json &kept = member(a, "kept", item_path);
    if (!kept.is_null())
      action.kept = parse_id(kept.get<std::string>(), item_path + ".kept");
    action.inputs = get_ids(a, "inputs", item_path);
    const json &created = get_array(a, "new_heuristics", item_path);
    for (std::size_t k = 0; k < created.size(); ++k)
      action.new_heuristics.push_back(heuristic_from_json(
          created[k], item_path + ".new_heuristics[" + std::to_string(k) + "]"));
    action.rationale = get_string(a, "rationale", item_path);
    action.resolves = static_cast<int>(get_int(a, "resolves", item_path));
    catalog.actions.push_back(std::move(action));
  }
  catalog.next_conflict_id = static_cast<int>(get_int(doc, "next_conflict_id", path));
  return catalog;
}

json project_to_json(const ProjectState &state) {
  json dimensions = json::array();
  for (const auto &item : state.profile.items)
    dimensions.push_back({
        {"kind", std::string(dimension_code(item.kind))},
        {"label", item.label},
        {"specificity", item.initial_specificity.value},
    });

  json stages = json::array();
  for (StageStatus status : state.stages) {
    switch (status) {
    case StageStatus::NotStarted:
      stages.push_back("not_started");
      break;
    case StageStatus::InProgress:
      stages.push_back("in_progress");
      break;
    case StageStatus::Complete:
      stages.push_back("complete");
      break;
    }
  }

  json gsi_tables = json::array();
  for (const auto &table : state.gsi_tables) {
    json scores = json::object();
    for (const auto &[label, score] : table.scores)
      scores[label] = score.value;
    gsi_tables.push_back({
        {"heuristic", table.heuristic.canonical()},
        {"kind", std::string(dimension_code(table.kind))},
        {"scores", scores},
    });
  }

  json matrix(nullptr);
  if (state.matrix) {
    json rows = json::array();
    for (const auto &row : state.matrix->rows)
      rows.push_back({
          {"heuristic", row.heuristic.canonical()},
          {"isi", row.isi.value},
          {"gsi_uc", rational_json(row.gsi_uc)},
          {"gsi_pd", rational_json(row.gsi_pd)},
          {"gsi_ld", rational_json(row.gsi_ld)},
          {"gsi_up", rational_json(row.gsi_up)},
          {"fsi", rational_json(row.fsi)},
      });
    matrix = json{{"rows", rows}};
  }

  json templates = json::array();
  for (const auto &t : state.templates) {
    json examples = json::array();
    for (const auto &example : t.examples)
      examples.push_back({
          {"kind", example.kind == TemplateExample::Kind::Compliance ? "compliance"
                                                                     : "non_compliance"},
          {"text", example.text},
      });
    templates.push_back({
        {"heuristic", t.heuristic.canonical()},
        {"name", t.name},
        {"description", t.description},
        {"examples", examples},
        {"benefits", t.benefits},
        {"problems", t.problems},
        {"application_context", t.application_context},
        {"related_heuristics", ids_json(t.related_heuristics)},
        {"checklist", t.checklist},
    });
  }

  json datasets = json::array();
  for (const auto &dataset : state.datasets) {
    json problems = json::array();
    for (const auto &p : dataset.problems)
      problems.push_back({
          {"id", p.id},
          {"description", p.description},
          {"classification", std::string(classification_code(p.classification))},
          {"domain_heuristic",
           p.domain_attribution ? json(p.domain_attribution->canonical()) : json(nullptr)},
          {"control_heuristic",
           p.control_attribution ? json(*p.control_attribution) : json(nullptr)},
          {"severity", p.severity.value},
          {"control_specificity",
           p.control_specificity ? json(p.control_specificity->value) : json(nullptr)},
      });
    datasets.push_back({
        {"case_study", dataset.case_study},
        {"domain_heuristics", ids_json(dataset.domain_heuristics)},
        {"control_heuristics", dataset.control_heuristics},
        {"problems", problems},
    });
  }

  json reports = json::array();
  for (const auto &entry : state.reports)
    reports.push_back({
        {"case_study", entry.case_study},
        {"iteration", entry.iteration},
        {"report", report_json(entry.report)},
        {"advice", advice_json(entry.advice)},
    });

  json loopbacks = json::array();
  for (const auto &record : state.loopbacks)
    loopbacks.push_back({
        {"from_iteration", record.from_iteration},
        {"target_stage", record.target_stage},
        {"reason", record.reason},
        {"overridden", record.overridden},
    });

  std::string outcome;
  switch (state.outcome) {
  case Outcome::Ongoing:
    outcome = "ongoing";
    break;
  case Outcome::ExitedAtStage2:
    outcome = "exited_at_stage_2";
    break;
  case Outcome::Validated:
    outcome = "validated";
    break;
  }

  return {
      {"schema_version", std::string(kSchemaVersion)},
      {"domain", {{"name", state.profile.domain_name},
                  {"keywords", state.profile.keywords},
                  {"dimensions", dimensions}}},
      {"stages", stages},
      {"iteration", state.iteration},
      {"outcome", outcome},
      {"catalog", catalog_to_json(state.catalog)},
      {"gsi_tables", gsi_tables},
      {"matrix", matrix},
      {"selection_threshold", optional_rational_json(state.selection_threshold)},
      {"templates", templates},
      {"datasets", datasets},
      {"reports", reports},
      {"loopbacks", loopbacks},
  };
}

ProjectState project_from_json(const json &doc) {
  if (!doc.is_object())
    fail(Errc::SchemaViolation, "$: project file must be a JSON object");
  std::string version = get_string(doc, "schema_version", "$");
  if (version != kSchemaVersion)
    fail(Errc::UnsupportedVersion, "unsupported schema_version '" + version + "' (expected '" +
                                       std::string(kSchemaVersion) + "')");

  ProjectState state;
  const json &domain = member(doc, "domain", "$");
  state.profile.domain_name = get_string(domain, "name", "$.domain");
  if (state.profile.domain_name.empty())
    bad("$.domain.name", "must be nonempty");
  for (const json &keyword : get_array(domain, "keywords", "$.domain"))
    state.profile.keywords.push_back(keyword.get<std::string>());
  const json &dimensions = get_array(domain, "dimensions", "$.domain");
  for (std::size_t i = 0; i < dimensions.size(); ++i) {
    const std::string path = "$.domain.dimensions[" + std::to_string(i) + "]";
    DimensionItem item;
    try {
      item.kind = parse_dimension_kind(get_string(dimensions[i], "kind", path));
    } catch (const Error &e) {
      if (e.code() == Errc::SchemaViolation)
        throw;
      bad(path + ".kind", e.what());
    }
    item.label = get_string(dimensions[i], "label", path);
    item.initial_specificity = SpecificityScore{get_likert(dimensions[i], "specificity", path)};
    try {
      state.profile.add_item(std::move(item));
    } catch (const Error &e) {
      bad(path, e.what());
    }
  }

  const json &stages = get_array(doc, "stages", "$");
  if (stages.size() != 8)
    bad("$.stages", "expected exactly 8 entries");
  for (std::size_t i = 0; i < 8; ++i) {
    std::string status = stages[i].is_string() ? stages[i].get<std::string>() : "";
    if (status == "not_started")
      state.stages[i] = StageStatus::NotStarted;
    else if (status == "in_progress")
      state.stages[i] = StageStatus::InProgress;
    else if (status == "complete")
      state.stages[i] = StageStatus::Complete;
    else
      bad("$.stages[" + std::to_string(i) + "]", "unknown stage status '" + status + "'");
  }

  state.iteration = static_cast<int>(get_int(doc, "iteration", "$"));
  if (state.iteration < 1)
    bad("$.iteration", "must be >= 1");
  std::string outcome = get_string(doc, "outcome", "$");
  if (outcome == "ongoing")
    state.outcome = Outcome::Ongoing;
  else if (outcome == "exited_at_stage_2")
    state.outcome = Outcome::ExitedAtStage2;
  else if (outcome == "validated")
    state.outcome = Outcome::Validated;
  else
    bad("$.outcome", "unknown outcome '" + outcome + "'");

  state.catalog = catalog_from_json(member(doc, "catalog", "$"));
  ValidationReport catalog_report = validate_catalog(state.catalog);
  if (!catalog_report.ok())
    bad("$.catalog", "invariants violated:\n" + catalog_report.to_text());

  const json &gsi_tables = get_array(doc, "gsi_tables", "$");
  for (std::size_t i = 0; i < gsi_tables.size(); ++i) {
    const std::string path = "$.gsi_tables[" + std::to_string(i) + "]";
    GsiTable table;
    table.heuristic = parse_id(get_string(gsi_tables[i], "heuristic", path), path + ".heuristic");
    try {
      table.kind = parse_dimension_kind(get_string(gsi_tables[i], "kind", path));
    } catch (const Error &e) {
      if (e.code() == Errc::SchemaViolation)
        throw;
      bad(path + ".kind", e.what());
    }
    const json &scores = member(gsi_tables[i], "scores", path);
    if (!scores.is_object())
      bad(path + ".scores", "expected an object");
    for (const auto &[label, value] : scores.items()) {
      if (!value.is_number_integer() || value.get<int>() < 0 || value.get<int>() > 4)
        bad(path + ".scores." + label, "Likert value out of range 0..4");
      table.scores[label] = SpecificityScore{value.get<int>()};
    }
    state.gsi_tables.push_back(std::move(table));
  }

  const json &matrix = member(doc, "matrix", "$");
  if (!matrix.is_null()) {
    SpecificityMatrix m;
    const json &rows = get_array(matrix, "rows", "$.matrix");
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const std::string path = "$.matrix.rows[" + std::to_string(i) + "]";
      MatrixRow row;
      row.heuristic = parse_id(get_string(rows[i], "heuristic", path), path + ".heuristic");
      row.isi = SpecificityScore{get_likert(rows[i], "isi", path)};
      row.gsi_uc = get_rational(rows[i], "gsi_uc", path);
      row.gsi_pd = get_rational(rows[i], "gsi_pd", path);
      row.gsi_ld = get_rational(rows[i], "gsi_ld", path);
      row.gsi_up = get_rational(rows[i], "gsi_up", path);
      row.fsi = get_rational(rows[i], "fsi", path);
      m.rows.push_back(std::move(row));
    }
    state.matrix = std::move(m);
  }

  const json &threshold = member(doc, "selection_threshold", "$");
  if (!threshold.is_null())
    state.selection_threshold = get_rational(doc, "selection_threshold", "$");

  const json &templates = get_array(doc, "templates", "$");
  for (std::size_t i = 0; i < templates.size(); ++i) {
    const std::string path = "$.templates[" + std::to_string(i) + "]";
    const json &t = templates[i];
    HeuristicTemplate tpl;
    tpl.heuristic = parse_id(get_string(t, "heuristic", path), path + ".heuristic");
    tpl.name = get_string(t, "name", path);
    tpl.description = get_string(t, "description", path);
    const json &examples = get_array(t, "examples", path);
    for (std::size_t k = 0; k < examples.size(); ++k) {
      const std::string example_path = path + ".examples[" + std::to_string(k) + "]";
      TemplateExample example;
      std::string kind = get_string(examples[k], "kind", example_path);
      if (kind == "compliance")
        example.kind = TemplateExample::Kind::Compliance;
      else if (kind == "non_compliance")
        example.kind = TemplateExample::Kind::NonCompliance;
      else
        bad(example_path + ".kind", "unknown example kind '" + kind + "'");
      example.text = get_string(examples[k], "text", example_path);
      tpl.examples.push_back(std::move(example));
    }
    tpl.benefits = get_string(t, "benefits", path);
    tpl.problems = get_string(t, "problems", path);
    tpl.application_context = get_string(t, "application_context", path);
    tpl.related_heuristics = get_ids(t, "related_heuristics", path);
    for (const json &step : get_array(t, "checklist", path))
      tpl.checklist.push_back(step.get<std::string>());
    state.templates.push_back(std::move(tpl));
  }

  const json &datasets = get_array(doc, "datasets", "$");
  for (std::size_t i = 0; i < datasets.size(); ++i) {
    const std::string path = "$.datasets[" + std::to_string(i) + "]";
    const json &d = datasets[i];
    EvaluationDataset dataset;
    dataset.case_study = get_string(d, "case_study", path);
    dataset.domain_heuristics = get_ids(d, "domain_heuristics", path);
    for (const json &token : get_array(d, "control_heuristics", path))
      dataset.control_heuristics.push_back(token.get<std::string>());
    const json &problems = get_array(d, "problems", path);
    for (std::size_t k = 0; k < problems.size(); ++k) {
      const std::string problem_path = path + ".problems[" + std::to_string(k) + "]";
      const json &p = problems[k];
      ProblemRecord record;
      record.id = get_string(p, "id", problem_path);
      record.description = get_string(p, "description", problem_path);
      try {
        record.classification = parse_classification(get_string(p, "classification", problem_path));
      } catch (const Error &e) {
        if (e.code() == Errc::SchemaViolation)
          throw;
        bad(problem_path + ".classification", e.what());
      }
      const json &domain_attr = member(p, "domain_heuristic", problem_path);
      if (!domain_attr.is_null())
        record.domain_attribution =
            parse_id(domain_attr.get<std::string>(), problem_path + ".domain_heuristic");
      const json &control_attr = member(p, "control_heuristic", problem_path);
      if (!control_attr.is_null())
        record.control_attribution = control_attr.get<std::string>();
      record.severity = Severity{get_likert(p, "severity", problem_path)};
      const json &spec = member(p, "control_specificity", problem_path);
      if (!spec.is_null()) {
        if (!spec.is_number_integer() || spec.get<int>() < 0 || spec.get<int>() > 4)
          bad(problem_path + ".control_specificity", "Likert value out of range 0..4");
        record.control_specificity = SpecificityScore{spec.get<int>()};
      }
      dataset.problems.push_back(std::move(record));
    }
    ValidationReport dataset_report = validate_dataset(dataset);
    if (!dataset_report.ok() && !only_missing_specificity(dataset_report))
      bad(path, "invariants violated:\n" + dataset_report.to_text());
    state.datasets.push_back(std::move(dataset));
  }

  const json &reports = get_array(doc, "reports", "$");
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const std::string path = "$.reports[" + std::to_string(i) + "]";
    const json &r = reports[i];
    ReportEntry entry;
    entry.case_study = get_string(r, "case_study", path);
    entry.iteration = static_cast<int>(get_int(r, "iteration", path));
    entry.report = report_from_json(member(r, "report", path), path + ".report");
    entry.advice = advice_from_json(member(r, "advice", path), path + ".advice");
    state.reports.push_back(std::move(entry));
  }

  const json &loopbacks = get_array(doc, "loopbacks", "$");
  for (std::size_t i = 0; i < loopbacks.size(); ++i) {
    const std::string path = "$.loopbacks[" + std::to_string(i) + "]";
    const json &l = loopbacks[i];
    LoopbackRecord record;
    record.from_iteration = static_cast<int>(get_int(l, "from_iteration", path));
    record.target_stage = static_cast<int>(get_int(l, "target_stage", path));
    record.reason = get_string(l, "reason", path);
    record.overridden = get_bool(l, "overridden", path);
    state.loopbacks.push_back(std::move(record));
  }

  return state;
}

std::string canonical_project_text(const ProjectState &state) {
  return project_to_json(state).dump(2);
}

std::string canonical_catalog_text(const HeuristicCatalog &catalog) {
  return catalog_to_json(catalog).dump(2);
}

void save_project(const ProjectState &state, const std::string &path) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out)
      fail(Errc::IoFailure, "cannot write '" + tmp + "'");
    out << canonical_project_text(state) << "\n";
    if (!out.flush())
      fail(Errc::IoFailure, "write failed for '" + tmp + "'");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    fail(Errc::IoFailure, "cannot replace '" + path + "'");
}

ProjectState load_project(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    fail(Errc::IoFailure, "cannot open '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error &e) {
    fail(Errc::SchemaViolation, "not valid JSON: " + std::string(e.what()));
  }
  return project_from_json(doc);
}

FileLock::FileLock(const std::string &path) {
  const std::string lock_path = path + ".lock";
  fd_ = ::open(lock_path.c_str(), O_CREAT | O_RDWR, 0644);
  if (fd_ < 0)
    fail(Errc::IoFailure, "cannot open lock file '" + lock_path + "'");
  if (::flock(fd_, LOCK_EX) != 0) {
    ::close(fd_);
    fail(Errc::IoFailure, "cannot lock '" + lock_path + "'");
  }
}

FileLock::~FileLock() {
  if (fd_ >= 0) {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
}

} // namespace heurbench
