#include "core/normalize.hpp"

#include "core/error.hpp"

#include <algorithm>
#include <set>

namespace heurbench {

namespace {

Origin derived_origin(NormalizationAction::Kind kind, const std::vector<HeuristicId> &inputs) {
  switch (kind) {
  case NormalizationAction::Kind::MergeReformulate:
    return Origin::merged_from(inputs);
  case NormalizationAction::Kind::GroupUnderGeneral:
    return Origin::generalized_from(inputs);
  case NormalizationAction::Kind::SplitIntoSeveral:
    return Origin::split_from(inputs.front());
  default:
    return Origin::found();
  }
}

void require_live(const HeuristicCatalog &catalog, const HeuristicId &id) {
  const Heuristic *h = catalog.find(id);
  if (!h)
    fail(Errc::UnknownId, "unknown heuristic " + id.canonical());
  if (h->status == HeuristicStatus::Discarded)
    fail(Errc::AlreadyDiscarded, id.canonical() + " is already discarded");
}

void validate_action(const HeuristicCatalog &catalog, const NormalizationAction &action) {
  const ConflictNote *conflict = catalog.find_conflict(action.resolves);
  if (!conflict)
    fail(Errc::StaleConflict, "conflict " + std::to_string(action.resolves) + " does not exist");
  bool already = std::any_of(catalog.actions.begin(), catalog.actions.end(),
                             [&](const NormalizationAction &a) { return a.resolves == action.resolves; });
  if (already || conflict->resolved)
    fail(Errc::StaleConflict, "conflict " + std::to_string(action.resolves) + " is already resolved");
  if (action.rationale.empty())
    fail(Errc::InvalidValue, "action rationale must be nonempty");

  std::set<HeuristicId> distinct(action.inputs.begin(), action.inputs.end());
  if (distinct.size() != action.inputs.size())
    fail(Errc::InvalidValue, "action inputs must be distinct");
  for (const auto &id : action.inputs)
    require_live(catalog, id);

  using Kind = NormalizationAction::Kind;
  switch (action.kind) {
  case Kind::KeepOneDiscardRest:
    if (!action.kept)
      fail(Errc::InvalidValue, "keep action requires a kept heuristic");
    if (action.inputs.empty())
      fail(Errc::InvalidValue, "keep action requires >=1 discarded heuristic");
    if (!action.new_heuristics.empty())
      fail(Errc::InvalidValue, "keep action creates no heuristics");
    if (distinct.count(*action.kept))
      fail(Errc::InvalidValue, "kept heuristic cannot also be discarded");
    require_live(catalog, *action.kept);
    break;
  case Kind::MergeReformulate:
  case Kind::GroupUnderGeneral:
    if (action.kept)
      fail(Errc::InvalidValue, "merge/group actions keep no existing heuristic");
    if (distinct.size() < 2)
      fail(Errc::InvalidValue, "merge requires >=2 inputs");
    if (action.new_heuristics.size() != 1)
      fail(Errc::InvalidValue, "merge/group actions create exactly one heuristic");
    break;
  case Kind::SplitIntoSeveral:
    if (action.kept)
      fail(Errc::InvalidValue, "split keeps no existing heuristic");
    if (action.inputs.size() != 1)
      fail(Errc::InvalidValue, "split takes exactly one input");
    if (action.new_heuristics.size() < 2)
      fail(Errc::InvalidValue, "split creates >=2 heuristics");
    break;
  }

  std::set<HeuristicId> fresh;
  for (const auto &created : action.new_heuristics) {
    if (created.id.set_id != kNewSetId)
      fail(Errc::InvalidValue, "created heuristic " + created.id.canonical() +
                                   " must use the reserved set " + std::string(kNewSetId));
    if (created.id.index <= 0)
      fail(Errc::InvalidValue, "created heuristic index must be positive");
    if (created.name.empty() || created.statement.empty())
      fail(Errc::InvalidValue, "created heuristic " + created.id.canonical() +
                                   " needs a name and a statement");
    if (catalog.find(created.id) || !fresh.insert(created.id).second)
      fail(Errc::IdCollision, "id " + created.id.canonical() + " is already taken");
  }
}

} // namespace

HeuristicCatalog apply_action(HeuristicCatalog catalog, NormalizationAction action) {
  validate_action(catalog, action);

  // Stamp derived fields so the logged action and the catalog agree exactly.
  Origin origin = derived_origin(action.kind, action.inputs);
  for (auto &created : action.new_heuristics) {
    created.origin = origin;
    created.status = HeuristicStatus::Normalized;
  }

  for (const auto &id : action.inputs)
    catalog.find(id)->status = HeuristicStatus::Discarded;
  if (action.kind == NormalizationAction::Kind::KeepOneDiscardRest) {
    Heuristic *kept = catalog.find(*action.kept);
    kept->status = HeuristicStatus::Normalized;
    if (kept->origin.kind == Origin::Kind::Found)
      kept->origin = Origin::kept_after_dedup();
  }
  for (const auto &created : action.new_heuristics)
    catalog.heuristics.push_back(created);

  catalog.find_conflict(action.resolves)->resolved = true;
  catalog.actions.push_back(std::move(action));
  return catalog;
}

NormalizationStatus check_normalized(const HeuristicCatalog &catalog) {
  NormalizationStatus status;
  for (const auto &conflict : catalog.conflicts) {
    bool settled = std::any_of(catalog.actions.begin(), catalog.actions.end(),
                               [&](const NormalizationAction &a) { return a.resolves == conflict.id; });
    if (!settled)
      status.open_conflicts.push_back(conflict.id);
  }
  status.normalized = status.open_conflicts.empty();
  return status;
}

HeuristicCatalog stage3_snapshot(const HeuristicCatalog &catalog) {
  HeuristicCatalog snapshot;
  snapshot.next_conflict_id = catalog.next_conflict_id;
  for (const auto &h : catalog.heuristics) {
    if (h.id.set_id == kNewSetId)
      continue;
    Heuristic reset = h;
    reset.status = HeuristicStatus::Denormalized;
    reset.origin = Origin::found();
    snapshot.heuristics.push_back(std::move(reset));
  }
  for (const auto &c : catalog.conflicts) {
    ConflictNote open = c;
    open.resolved = false;
    snapshot.conflicts.push_back(std::move(open));
  }
  return snapshot;
}

HeuristicCatalog replay_actions(HeuristicCatalog snapshot,
                                const std::vector<NormalizationAction> &log) {
  for (const auto &action : log)
    snapshot = apply_action(std::move(snapshot), action);
  return snapshot;
}

} // namespace heurbench
