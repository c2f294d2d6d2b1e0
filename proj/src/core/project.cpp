#include "core/project.hpp"

#include "core/error.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

namespace heurbench {

std::string_view stage_title(int stage) {
  switch (stage) {
  case 1:
    return "search for specific information";
  case 2:
    return "search for usability heuristics";
  case 3:
    return "heuristic specificity";
  case 4:
    return "heuristic normalization";
  case 5:
    return "heuristic prioritization";
  case 6:
    return "detailed description of heuristics";
  case 7:
    return "validation";
  case 8:
    return "refinement";
  }
  return "";
}

namespace {

void check_stage_number(int stage) {
  if (stage < 1 || stage > 8)
    fail(Errc::InvalidTarget, "stage must be 1..8, got " + std::to_string(stage));
}

void require_ongoing(const ProjectState &state) {
  if (state.outcome == Outcome::ExitedAtStage2)
    fail(Errc::PrerequisiteMissing,
         "the project exited at stage 2 with an already-validated heuristic set");
}

// A stage is workable while its predecessors are complete and it is not.
void require_stage_open(const ProjectState &state, int stage) {
  check_stage_number(stage);
  require_ongoing(state);
  for (int s = 1; s < stage; ++s)
    if (state.stage(s) != StageStatus::Complete)
      fail(Errc::PrerequisiteMissing, "stage " + std::to_string(stage) + " (" +
                                          std::string(stage_title(stage)) + ") requires stage " +
                                          std::to_string(s) + " to be complete");
  if (state.stage(stage) == StageStatus::Complete)
    fail(Errc::PrerequisiteMissing, "stage " + std::to_string(stage) +
                                        " is already complete; loop back to revise it");
}

void open_stage(ProjectState &state, int stage) {
  if (state.stage(stage) == StageStatus::NotStarted)
    state.stages[stage - 1] = StageStatus::InProgress;
}

Heuristic &require_heuristic(ProjectState &state, const HeuristicId &id) {
  Heuristic *h = state.catalog.find(id);
  if (!h)
    fail(Errc::UnknownId, "unknown heuristic " + id.canonical());
  return *h;
}

} // namespace

const EvaluationDataset *ProjectState::find_dataset(const std::string &case_study) const {
  for (const auto &d : datasets)
    if (d.case_study == case_study)
      return &d;
  return nullptr;
}

const HeuristicTemplate *ProjectState::find_template(const HeuristicId &id) const {
  for (const auto &t : templates)
    if (t.heuristic == id)
      return &t;
  return nullptr;
}

const ReportEntry *ProjectState::latest_report(const std::string &case_study) const {
  const ReportEntry *best = nullptr;
  for (const auto &entry : reports)
    if (entry.case_study == case_study && (!best || entry.iteration > best->iteration))
      best = &entry;
  return best;
}

ProjectState init_project(std::string domain_name) {
  if (domain_name.empty())
    fail(Errc::InvalidValue, "domain name must be nonempty");
  ProjectState state;
  state.profile.domain_name = std::move(domain_name);
  return state;
}

void add_dimension_item(ProjectState &state, DimensionKind kind, std::string label, int score) {
  require_stage_open(state, 1);
  state.profile.add_item({kind, std::move(label), SpecificityScore::of(score)});
  open_stage(state, 1);
}

void add_keyword(ProjectState &state, std::string keyword) {
  require_stage_open(state, 1);
  if (keyword.empty())
    fail(Errc::InvalidValue, "keyword must be nonempty");
  for (const auto &existing : state.profile.keywords)
    if (existing == keyword)
      fail(Errc::DuplicateId, "keyword '" + keyword + "' already recorded");
  state.profile.keywords.push_back(std::move(keyword));
  open_stage(state, 1);
}

ImportSummary import_heuristics(ProjectState &state, const CsvTable &table) {
  require_stage_open(state, 2);
  auto imported = import_heuristics_csv(table, state.catalog.heuristics);
  for (auto &h : imported)
    state.catalog.heuristics.push_back(std::move(h));
  open_stage(state, 2);
  ImportSummary summary;
  summary.imported = static_cast<int>(imported.size());
  return summary;
}

std::string list_heuristics(const ProjectState &state) {
  std::ostringstream out;
  for (const auto &h : state.catalog.heuristics) {
    out << std::left << std::setw(10) << h.id.canonical() << " isi=" << h.isi.value << " ";
    switch (h.status) {
    case HeuristicStatus::Denormalized:
      out << "denormalized";
      break;
    case HeuristicStatus::Normalized:
      out << "normalized  ";
      break;
    case HeuristicStatus::Selected:
      out << "selected    ";
      break;
    case HeuristicStatus::Discarded:
      out << "discarded   ";
      break;
    }
    out << " " << h.name << "\n";
  }
  if (state.catalog.heuristics.empty())
    out << "(no heuristics recorded)\n";
  return out.str();
}

void set_isi(ProjectState &state, const HeuristicId &id, int value) {
  if (state.stage(2) != StageStatus::Complete)
    fail(Errc::PrerequisiteMissing, "record heuristics (stage 2) before scoring them");
  require_ongoing(state);
  if (state.stage(4) == StageStatus::Complete)
    fail(Errc::PrerequisiteMissing,
         "specificity indices are frozen once normalization is complete; loop back to revise");
  Heuristic &h = require_heuristic(state, id);
  if (h.status == HeuristicStatus::Discarded)
    fail(Errc::AlreadyDiscarded, id.canonical() + " is discarded");
  if (h.id.set_id == kNewSetId)
    fail(Errc::InvalidValue, "heuristics created during normalization carry the index assigned "
                             "at creation; redo the action to change it");
  h.isi = SpecificityScore::of(value);
  open_stage(state, 3);
}

int declare_conflict(ProjectState &state, ConflictNote::Kind kind,
                     std::vector<HeuristicId> members, std::string note) {
  require_stage_open(state, 4);
  std::set<HeuristicId> distinct(members.begin(), members.end());
  if (distinct.size() != members.size())
    fail(Errc::InvalidValue, "conflict members must be distinct");
  if (members.empty() || (kind == ConflictNote::Kind::Duplication && members.size() < 2))
    fail(Errc::InvalidValue, "duplication conflicts need >=2 members, overlaps >=1");
  for (const auto &id : members) {
    const Heuristic &h = require_heuristic(state, id);
    if (h.status == HeuristicStatus::Discarded)
      fail(Errc::AlreadyDiscarded, id.canonical() + " is discarded");
  }
  ConflictNote conflict;
  conflict.id = state.catalog.next_conflict_id++;
  conflict.kind = kind;
  conflict.members = std::move(members);
  conflict.note = std::move(note);
  state.catalog.conflicts.push_back(std::move(conflict));
  open_stage(state, 4);
  return state.catalog.conflicts.back().id;
}

void apply_normalization(ProjectState &state, NormalizationAction action) {
  require_stage_open(state, 4);
  state.catalog = apply_action(std::move(state.catalog), std::move(action));
  open_stage(state, 4);
}

std::string normalization_status_text(const ProjectState &state) {
  NormalizationStatus status = check_normalized(state.catalog);
  std::ostringstream out;
  out << (status.normalized ? "normalized: yes" : "normalized: no") << "\n";
  for (int id : status.open_conflicts) {
    const ConflictNote *conflict = state.catalog.find_conflict(id);
    out << "  open conflict " << id << " ("
        << (conflict->kind == ConflictNote::Kind::Duplication ? "duplication" : "overlap") << ":";
    for (const auto &m : conflict->members)
      out << " " << m.canonical();
    out << ")\n";
  }

  // Integrity: replaying the log over the pre-normalization snapshot must
  // reproduce the catalog (selection statuses aside, which stage 5 sets).
  HeuristicCatalog replayed = replay_actions(stage3_snapshot(state.catalog), state.catalog.actions);
  HeuristicCatalog current = state.catalog;
  for (auto &h : current.heuristics)
    if (h.status == HeuristicStatus::Selected)
      h.status = HeuristicStatus::Normalized;
  if (state.stage(4) == StageStatus::Complete) {
    // Stage-4 completion promotes untouched heuristics; mirror it for replay.
    for (auto &h : replayed.heuristics)
      if (h.status == HeuristicStatus::Denormalized)
        h.status = HeuristicStatus::Normalized;
  }
  out << "log entries: " << state.catalog.actions.size() << ", replay "
      << (replayed == current ? "consistent" : "INCONSISTENT") << "\n";
  return out.str();
}

void set_gsi_score(ProjectState &state, const HeuristicId &id, DimensionKind kind,
                   const std::string &label, int score) {
  require_stage_open(state, 5);
  Heuristic &h = require_heuristic(state, id);
  if (h.status == HeuristicStatus::Discarded)
    fail(Errc::AlreadyDiscarded, id.canonical() + " is discarded");
  auto items = state.profile.items_of(kind);
  bool known = std::any_of(items.begin(), items.end(),
                           [&](const DimensionItem *item) { return item->label == label; });
  if (!known)
    fail(Errc::UnknownId, "no " + std::string(dimension_code(kind)) + " item labeled '" + label +
                              "' in the domain profile");
  for (auto &table : state.gsi_tables) {
    if (table.heuristic == id && table.kind == kind) {
      table.scores[label] = SpecificityScore::of(score);
      open_stage(state, 5);
      return;
    }
  }
  GsiTable table;
  table.heuristic = id;
  table.kind = kind;
  table.scores[label] = SpecificityScore::of(score);
  state.gsi_tables.push_back(std::move(table));
  open_stage(state, 5);
}

const SpecificityMatrix &build_matrix_artifact(ProjectState &state) {
  require_stage_open(state, 5);
  state.matrix = build_matrix(state.catalog, state.gsi_tables, state.profile);
  open_stage(state, 5);
  return *state.matrix;
}

std::vector<HeuristicId> select_by_threshold(ProjectState &state, const Rational &threshold) {
  require_stage_open(state, 5);
  if (!state.matrix)
    fail(Errc::PrerequisiteMissing, "build the specificity matrix before selecting");
  if (threshold < Rational(0) || threshold > Rational(4))
    fail(Errc::InvalidValue, "selection threshold must lie in [0, 4]");
  Selection result = select_heuristics(*state.matrix, threshold, std::move(state.catalog));
  state.catalog = std::move(result.catalog);
  state.selection_threshold = threshold;
  open_stage(state, 5);
  return result.selected;
}

void set_template(ProjectState &state, HeuristicTemplate t) {
  require_stage_open(state, 6);
  ValidationReport report = validate_template(t, state.catalog);
  if (!report.ok())
    fail(Errc::InvalidTemplate, report.to_text());
  for (auto &existing : state.templates) {
    if (existing.heuristic == t.heuristic) {
      existing = std::move(t);
      open_stage(state, 6);
      return;
    }
  }
  state.templates.push_back(std::move(t));
  open_stage(state, 6);
}

std::string render_template_text(const ProjectState &state, const HeuristicId &id) {
  const HeuristicTemplate *t = state.find_template(id);
  if (!t)
    fail(Errc::UnknownId, "no template recorded for " + id.canonical());
  return render_template(*t, state.catalog);
}

ImportSummary import_problems(ProjectState &state, const std::string &case_study,
                              const CsvTable &table, std::vector<std::string> control_heuristics) {
  require_stage_open(state, 7);
  if (state.find_dataset(case_study))
    fail(Errc::DuplicateId, "case study '" + case_study + "' already has a dataset");
  if (control_heuristics.empty())
    control_heuristics = default_control_heuristics();

  std::vector<HeuristicId> selected;
  if (state.matrix) {
    for (const auto &row : state.matrix->rows) {
      const Heuristic *h = state.catalog.find(row.heuristic);
      if (h && h->status == HeuristicStatus::Selected)
        selected.push_back(row.heuristic);
    }
  }
  if (selected.empty())
    fail(Errc::PrerequisiteMissing, "no selected heuristics to evaluate against");

  ImportSummary summary;
  EvaluationDataset dataset = import_problems_csv(table, case_study, std::move(selected),
                                                  std::move(control_heuristics), summary);
  ValidationReport report = validate_dataset(dataset);
  if (!report.ok() && !only_missing_specificity(report))
    fail(Errc::InvalidValue, "dataset rejected:\n" + report.to_text());
  state.datasets.push_back(std::move(dataset));
  open_stage(state, 7);
  return summary;
}

const ReportEntry &compute_indicators(ProjectState &state, const std::string &case_study) {
  require_ongoing(state);
  if (state.stage(6) != StageStatus::Complete)
    fail(Errc::PrerequisiteMissing, "indicators require the description stage to be complete");
  const EvaluationDataset *dataset = state.find_dataset(case_study);
  if (!dataset)
    fail(Errc::UnknownId, "no dataset for case study '" + case_study + "'");

  ReportEntry entry;
  entry.case_study = case_study;
  entry.iteration = state.iteration;
  entry.report = build_report(*dataset, state.matrix ? &*state.matrix : nullptr);
  entry.advice = advise(entry.report);

  for (auto &existing : state.reports) {
    if (existing.case_study == case_study && existing.iteration == state.iteration) {
      existing = std::move(entry);
      open_stage(state, 7);
      return existing;
    }
  }
  state.reports.push_back(std::move(entry));
  open_stage(state, 7);
  return state.reports.back();
}

const ReportEntry &get_or_compute_report(ProjectState &state, const std::string &case_study) {
  for (const auto &entry : state.reports)
    if (entry.case_study == case_study && entry.iteration == state.iteration)
      return entry;
  return compute_indicators(state, case_study);
}

void advance_stage(ProjectState &state, int stage, bool exit_early) {
  require_stage_open(state, stage);
  if (exit_early && stage != 2)
    fail(Errc::InvalidValue, "early exit is only possible at stage 2");

  switch (stage) {
  case 1: {
    for (auto kind : kDimensionKinds)
      if (state.profile.items_of(kind).empty())
        fail(Errc::PrerequisiteMissing, "stage 1 needs at least one " +
                                            std::string(dimension_name(kind)) + " item");
    if (state.profile.keywords.empty())
      fail(Errc::PrerequisiteMissing, "stage 1 needs at least one search keyword");
    break;
  }
  case 2:
    if (state.catalog.heuristics.empty())
      fail(Errc::PrerequisiteMissing, "stage 2 needs at least one recorded heuristic");
    break;
  case 3:
    break; // specificity indices are recorded with the heuristics themselves
  case 4: {
    NormalizationStatus status = check_normalized(state.catalog);
    if (!status.normalized) {
      std::string open;
      for (int id : status.open_conflicts)
        open += (open.empty() ? "" : ", ") + std::to_string(id);
      fail(Errc::PrerequisiteMissing, "unresolved conflicts: " + open);
    }
    // The catalog is certified normalized; promote the untouched survivors.
    for (auto &h : state.catalog.heuristics)
      if (h.status == HeuristicStatus::Denormalized)
        h.status = HeuristicStatus::Normalized;
    break;
  }
  case 5: {
    if (!state.matrix)
      fail(Errc::PrerequisiteMissing, "stage 5 needs the specificity matrix");
    SpecificityMatrix fresh = build_matrix(state.catalog, state.gsi_tables, state.profile);
    if (!(fresh == *state.matrix))
      fail(Errc::PrerequisiteMissing, "the stored matrix is stale; rebuild it");
    bool any_selected = std::any_of(
        state.catalog.heuristics.begin(), state.catalog.heuristics.end(),
        [](const Heuristic &h) { return h.status == HeuristicStatus::Selected; });
    if (!any_selected)
      fail(Errc::PrerequisiteMissing, "stage 5 needs at least one selected heuristic");
    break;
  }
  case 6: {
    for (const auto &h : state.catalog.heuristics) {
      if (h.status != HeuristicStatus::Selected)
        continue;
      const HeuristicTemplate *t = state.find_template(h.id);
      if (!t)
        fail(Errc::PrerequisiteMissing, "selected heuristic " + h.id.canonical() +
                                            " has no template");
      ValidationReport report = validate_template(*t, state.catalog);
      if (!report.ok())
        fail(Errc::PrerequisiteMissing, "template for " + h.id.canonical() + " is invalid:\n" +
                                            report.to_text());
    }
    break;
  }
  case 7: {
    if (state.datasets.empty())
      fail(Errc::PrerequisiteMissing, "stage 7 requires at least one heuristic evaluation dataset");
    for (const auto &dataset : state.datasets)
      get_or_compute_report(state, dataset.case_study);
    break;
  }
  case 8:
    state.outcome = Outcome::Validated;
    break;
  }

  state.stages[stage - 1] = StageStatus::Complete;
  if (stage == 2 && exit_early)
    state.outcome = Outcome::ExitedAtStage2;
  else if (stage < 8)
    open_stage(state, stage + 1);
}

void loop_back(ProjectState &state, int target_stage, std::string reason, bool overridden) {
  check_stage_number(target_stage);
  if (state.stage(7) != StageStatus::Complete || state.reports.empty())
    fail(Errc::NoAdviceYet, "loop-back requires a completed validation with advice");
  if (reason.empty())
    fail(Errc::InvalidValue, "loop-back requires a reason");
  if (target_stage == 8)
    fail(Errc::InvalidTarget, "stage 8 is the refinement stage itself");

  std::set<int> advised;
  for (const auto &entry : state.reports)
    if (entry.iteration == state.iteration)
      for (const auto &rule : entry.advice.triggered)
        advised.insert(rule.revisit_stages.begin(), rule.revisit_stages.end());
  bool in_advice = advised.count(target_stage) > 0;
  if (!in_advice && !overridden)
    fail(Errc::InvalidTarget, "stage " + std::to_string(target_stage) +
                                  " is not in the advised revisit set; pass an explicit override");

  state.loopbacks.push_back({state.iteration, target_stage, std::move(reason), !in_advice});
  state.iteration += 1;
  state.outcome = Outcome::Ongoing;
  state.stages[target_stage - 1] = StageStatus::InProgress;
  for (int s = target_stage + 1; s <= 8; ++s)
    state.stages[s - 1] = StageStatus::NotStarted;
}

namespace {

struct ChartRow {
  std::string_view indicator;
  bool available;
  std::string value; // 4-decimal, empty when unavailable
};

std::vector<ChartRow> chart_rows(const IndicatorReport &report) {
  auto rational_row = [](std::string_view name, const Rate &rate) {
    return ChartRow{name, rate.available,
                    rate.available ? rate.value.to_decimal_string() : std::string()};
  };
  std::string delta;
  if (report.dispersion_rate.available) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(4) << report.dispersion_rate.value();
    delta = out.str();
  }
  return {
      rational_row("phi", report.unique_rate),
      rational_row("phi_star", report.unique_rate_approx),
      {"delta", report.dispersion_rate.available, delta},
      rational_row("lambda", report.severity_rate),
      rational_row("lambda_star", report.severity_rate_approx),
      rational_row("epsilon", report.specificity_rate),
  };
}

} // namespace

std::string export_chart_csv(const ProjectState &state) {
  if (state.reports.empty())
    fail(Errc::NothingToExport, "no indicator reports computed yet");

  std::vector<std::string> cases;
  for (const auto &entry : state.reports)
    if (std::find(cases.begin(), cases.end(), entry.case_study) == cases.end())
      cases.push_back(entry.case_study);
  std::sort(cases.begin(), cases.end());

  std::ostringstream out;
  out << "# reference_value=1\n";
  out << "case,indicator,value,available\n";
  for (const auto &case_study : cases) {
    const ReportEntry *entry = state.latest_report(case_study);
    for (const ChartRow &row : chart_rows(entry->report))
      out << case_study << "," << row.indicator << "," << row.value << ","
          << (row.available ? "true" : "false") << "\n";
  }
  return out.str();
}

std::string status_text(const ProjectState &state) {
  std::ostringstream out;
  out << "domain: " << state.profile.domain_name << "\n";
  out << "iteration: " << state.iteration << "\n";
  out << "outcome: ";
  switch (state.outcome) {
  case Outcome::Ongoing:
    out << "ongoing";
    break;
  case Outcome::ExitedAtStage2:
    out << "exited at stage 2 (existing validated heuristics)";
    break;
  case Outcome::Validated:
    out << "validated";
    break;
  }
  out << "\n";
  for (int stage = 1; stage <= 8; ++stage) {
    out << "  stage " << stage << " (" << stage_title(stage) << "): ";
    switch (state.stage(stage)) {
    case StageStatus::NotStarted:
      out << "not started";
      break;
    case StageStatus::InProgress:
      out << "in progress";
      break;
    case StageStatus::Complete:
      out << "complete";
      break;
    }
    out << "\n";
  }
  out << "heuristics: " << state.catalog.heuristics.size()
      << ", conflicts: " << state.catalog.conflicts.size()
      << ", actions: " << state.catalog.actions.size()
      << ", templates: " << state.templates.size() << ", datasets: " << state.datasets.size()
      << ", reports: " << state.reports.size() << "\n";
  return out.str();
}

} // namespace heurbench
