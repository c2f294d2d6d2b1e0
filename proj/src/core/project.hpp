#pragma once

#include "core/advisor.hpp"
#include "core/csv.hpp"
#include "core/import.hpp"
#include "core/indicators.hpp"
#include "core/model.hpp"
#include "core/normalize.hpp"
#include "core/specificity.hpp"
#include "core/template_doc.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace heurbench {

enum class StageStatus { NotStarted, InProgress, Complete };
enum class Outcome { Ongoing, ExitedAtStage2, Validated };

std::string_view stage_title(int stage); // 1..8

struct LoopbackRecord {
  int from_iteration = 0;
  int target_stage = 0;
  std::string reason;
  bool overridden = false; // target was outside the advised revisit set

  bool operator==(const LoopbackRecord &) const = default;
};

struct ReportEntry {
  std::string case_study;
  int iteration = 0;
  IndicatorReport report;
  RefinementAdvice advice;
};

/// Whole-project state: the eight-stage pipeline with its artifacts, the
/// iteration counter, and the immutable history of computed reports and
/// loop-backs. Stage k may be worked on only while stages 1..k-1 are complete
/// and k itself is not; a refinement loop-back reopens a stage by reverting
/// it to InProgress and everything downstream to NotStarted.
struct ProjectState {
  DomainProfile profile;
  std::array<StageStatus, 8> stages = {StageStatus::InProgress, StageStatus::NotStarted,
                                       StageStatus::NotStarted, StageStatus::NotStarted,
                                       StageStatus::NotStarted, StageStatus::NotStarted,
                                       StageStatus::NotStarted, StageStatus::NotStarted};
  int iteration = 1;
  Outcome outcome = Outcome::Ongoing;
  HeuristicCatalog catalog;
  std::vector<GsiTable> gsi_tables;
  std::optional<SpecificityMatrix> matrix;
  std::optional<Rational> selection_threshold;
  std::vector<HeuristicTemplate> templates;
  std::vector<EvaluationDataset> datasets;
  std::vector<ReportEntry> reports;
  std::vector<LoopbackRecord> loopbacks;

  StageStatus stage(int stage) const { return stages.at(stage - 1); }
  const EvaluationDataset *find_dataset(const std::string &case_study) const;
  const HeuristicTemplate *find_template(const HeuristicId &id) const;
  const ReportEntry *latest_report(const std::string &case_study) const;
};

ProjectState init_project(std::string domain_name);

// --- stage 1 ---
void add_dimension_item(ProjectState &state, DimensionKind kind, std::string label, int score);
void add_keyword(ProjectState &state, std::string keyword);

// --- stage 2 ---
ImportSummary import_heuristics(ProjectState &state, const CsvTable &table);
std::string list_heuristics(const ProjectState &state);

// --- stages 3-4 ---
void set_isi(ProjectState &state, const HeuristicId &id, int value);
int declare_conflict(ProjectState &state, ConflictNote::Kind kind,
                     std::vector<HeuristicId> members, std::string note);
void apply_normalization(ProjectState &state, NormalizationAction action);
std::string normalization_status_text(const ProjectState &state);

// --- stage 5 ---
void set_gsi_score(ProjectState &state, const HeuristicId &id, DimensionKind kind,
                   const std::string &label, int score);
const SpecificityMatrix &build_matrix_artifact(ProjectState &state);
std::vector<HeuristicId> select_by_threshold(ProjectState &state, const Rational &threshold);

// --- stage 6 ---
void set_template(ProjectState &state, HeuristicTemplate t);
std::string render_template_text(const ProjectState &state, const HeuristicId &id);

// --- stage 7 ---
ImportSummary import_problems(ProjectState &state, const std::string &case_study,
                              const CsvTable &table, std::vector<std::string> control_heuristics);
const ReportEntry &compute_indicators(ProjectState &state, const std::string &case_study);
const ReportEntry &get_or_compute_report(ProjectState &state, const std::string &case_study);

// --- stage control ---
void advance_stage(ProjectState &state, int stage, bool exit_early = false);
void loop_back(ProjectState &state, int target_stage, std::string reason, bool overridden);

// --- reporting ---
/// Chart-ready CSV: one row per (case, indicator), indicators in fixed order
/// phi, phi_star, delta, lambda, lambda_star, epsilon; leading comment line
/// records the reference value 1. Uses the latest report per case.
std::string export_chart_csv(const ProjectState &state);
std::string status_text(const ProjectState &state);

} // namespace heurbench
