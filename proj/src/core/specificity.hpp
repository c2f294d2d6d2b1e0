#pragma once

#include "core/model.hpp"
#include "core/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace heurbench {

/// Per-heuristic specificity scores for one characteristic dimension: one
/// entry per DomainProfile item of that kind, keyed by item label.
struct GsiTable {
  HeuristicId heuristic;
  DimensionKind kind = DimensionKind::UsageContext;
  std::map<std::string, SpecificityScore> scores;

  bool operator==(const GsiTable &) const = default;
};

/// Arithmetic mean of the row's scores, as an exact rational. Throws
/// IncompleteRow unless the table covers exactly the profile's items of that
/// kind.
Rational compute_gsi(const GsiTable &table, const DomainProfile &profile);

/// Final specificity index: 4 * isi * (sum of the four dimension means) / 64.
/// Ranges over [0, 4]; throws OutOfRangeGsi when a mean is outside [0, 4].
Rational compute_fsi(SpecificityScore isi, const Rational &gsi_uc, const Rational &gsi_pd,
                     const Rational &gsi_ld, const Rational &gsi_up);

struct MatrixRow {
  HeuristicId heuristic;
  SpecificityScore isi;
  Rational gsi_uc, gsi_pd, gsi_ld, gsi_up;
  Rational fsi;

  bool operator==(const MatrixRow &) const = default;
};

struct SpecificityMatrix {
  std::vector<MatrixRow> rows; // sorted: fsi desc, isi desc, id asc

  const MatrixRow *find(const HeuristicId &id) const;
  std::string to_text() const;

  bool operator==(const SpecificityMatrix &) const = default;
};

/// Builds one row per normalized (non-discarded) heuristic. Throws
/// MissingGsiRow listing every absent (heuristic, dimension) pair.
SpecificityMatrix build_matrix(const HeuristicCatalog &catalog,
                               const std::vector<GsiTable> &tables,
                               const DomainProfile &profile);

struct Selection {
  std::vector<HeuristicId> selected; // matrix order
  HeuristicCatalog catalog;          // with statuses updated to Selected
};

/// Keeps rows with fsi >= threshold, preserving matrix order, and marks them
/// Selected in the returned catalog (previously Selected rows below the
/// threshold drop back to Normalized).
Selection select_heuristics(const SpecificityMatrix &matrix, const Rational &threshold,
                            HeuristicCatalog catalog);

} // namespace heurbench
