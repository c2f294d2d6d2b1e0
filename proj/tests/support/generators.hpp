#pragma once

// Deterministic random-input builders shared by the property tests and the
// acceptance suite.

#include "core/csv.hpp"
#include "core/model.hpp"
#include "core/project.hpp"
#include "core/specificity.hpp"
#include "support/oracle.hpp"

#include <map>
#include <random>
#include <string>
#include <vector>

namespace testgen {

using Rng = std::mt19937;

struct DatasetOptions {
  int max_problems = 20;
  int max_heuristics_per_side = 6;
  bool always_specificity = true; // otherwise ~30% of control-side scores are left out
};

heurbench::EvaluationDataset random_dataset(Rng &rng, const DatasetOptions &options = {});

/// Random exact matrix covering the dataset's domain heuristics (isi 0..4,
/// dimension means in quarter steps).
heurbench::SpecificityMatrix random_matrix_for(const heurbench::EvaluationDataset &dataset,
                                               Rng &rng);

std::map<std::string, oracle::Frac> fsi_map(const heurbench::SpecificityMatrix &matrix);

/// Relabels the two evaluator groups: domain-only problems become
/// control-only and vice versa, attributions follow. Control tokens turn into
/// ids in set "C"; domain ids turn into control tokens via their canonical
/// text. Specificity scores are dropped (the swapped control side has none).
heurbench::EvaluationDataset swap_roles(const heurbench::EvaluationDataset &dataset);

/// Construction for the full reciprocity property: integer per-heuristic
/// specificity on both sides, with every control-side problem scored exactly
/// at its heuristic's value, so that the specificity and dispersion rates of
/// the swapped dataset are the exact reciprocals of the original's.
struct ReciprocalPair {
  heurbench::EvaluationDataset dataset;
  heurbench::SpecificityMatrix matrix;
  heurbench::EvaluationDataset swapped;
  heurbench::SpecificityMatrix swapped_matrix;
};
ReciprocalPair make_reciprocal_pair(Rng &rng);

/// Catalog of found heuristics with some declared conflicts, as it stands
/// after scoring and before any normalization action.
heurbench::HeuristicCatalog random_snapshot(Rng &rng);

/// A valid action resolving some open conflict, or nothing when no conflict
/// can still be resolved with the live heuristics at hand.
std::optional<heurbench::NormalizationAction>
random_action_for(const heurbench::HeuristicCatalog &catalog, Rng &rng);

/// In-memory CSV helper for import tests.
heurbench::CsvTable make_table(std::vector<std::string> header,
                               std::vector<std::vector<std::string>> rows);

/// Drives a project through the pipeline ops up to and including
/// `stop_after_stage` (0 = freshly initialized). Early exit applies at stage
/// 2; a loop-back (to stage 5) applies after stage 8.
struct ProjectScript {
  int stop_after_stage = 8;
  bool exit_early = false;
  bool with_loopback = false;
};
heurbench::ProjectState scripted_project(const ProjectScript &script);

} // namespace testgen
