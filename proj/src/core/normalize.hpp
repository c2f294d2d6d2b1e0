#pragma once

#include "core/model.hpp"

#include <vector>

namespace heurbench {

/// Applies one normalization action and returns the updated catalog. Errors
/// (UnknownId, AlreadyDiscarded, StaleConflict, IdCollision, InvalidValue)
/// throw before anything is touched, so the caller's catalog is unchanged.
HeuristicCatalog apply_action(HeuristicCatalog catalog, NormalizationAction action);

struct NormalizationStatus {
  bool normalized = false;
  std::vector<int> open_conflicts; // declared but unresolved conflict ids
};

/// Normalized means every declared conflict has been settled by a logged
/// action. A catalog with no declared conflicts is trivially normalized.
NormalizationStatus check_normalized(const HeuristicCatalog &catalog);

/// Reconstructs the catalog as it stood before any normalization action:
/// heuristics created during normalization removed, statuses reset to
/// Denormalized, origins reset to Found, conflicts unresolved, log empty.
HeuristicCatalog stage3_snapshot(const HeuristicCatalog &catalog);

/// Folds apply_action over the log. replay(stage3_snapshot(c), c.actions)
/// reproduces c exactly; `normalize status` uses this as an integrity check.
HeuristicCatalog replay_actions(HeuristicCatalog snapshot,
                                const std::vector<NormalizationAction> &log);

} // namespace heurbench
