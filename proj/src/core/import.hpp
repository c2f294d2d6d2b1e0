#pragma once

#include "core/csv.hpp"
#include "core/model.hpp"

#include <string>
#include <vector>

namespace heurbench {

struct ImportSummary {
  int imported = 0;
  std::vector<std::string> warnings;
};

/// Heuristic rows: set_id,index,name,statement,isi. Rejects duplicate ids
/// (within the file and against `existing`) and out-of-range values, naming
/// the offending line and column.
std::vector<Heuristic> import_heuristics_csv(const CsvTable &table,
                                             const std::vector<Heuristic> &existing);

/// Problem rows: id,description,classification,domain_heuristic,
/// control_heuristic,severity,control_specificity. Optional cells stay empty
/// when inapplicable. A missing control-side specificity is tolerated with a
/// warning; everything else that breaks a record invariant rejects the row.
EvaluationDataset import_problems_csv(const CsvTable &table, std::string case_study,
                                      std::vector<HeuristicId> domain_heuristics,
                                      std::vector<std::string> control_heuristics,
                                      ImportSummary &summary);

} // namespace heurbench
