#include "support/fixtures.hpp"

#include "core/csv.hpp"

namespace testgen {

using namespace heurbench;

F1Fixture load_f1() {
  F1Fixture f1;

  f1.profile.domain_name = "transit ticketing kiosks";
  f1.profile.keywords = {"kiosk usability"};
  f1.profile.add_item({DimensionKind::UsageContext, "station hall", SpecificityScore{3}});
  f1.profile.add_item({DimensionKind::UsageContext, "street curb", SpecificityScore{2}});
  f1.profile.add_item({DimensionKind::UsageContext, "noisy concourse", SpecificityScore{2}});
  f1.profile.add_item({DimensionKind::UsageContext, "rush hour", SpecificityScore{4}});
  f1.profile.add_item({DimensionKind::LogicalDevice, "touch ui", SpecificityScore{4}});
  f1.profile.add_item({DimensionKind::LogicalDevice, "voice prompts", SpecificityScore{2}});
  f1.profile.add_item({DimensionKind::PhysicalDevice, "kiosk touchscreen", SpecificityScore{4}});
  f1.profile.add_item({DimensionKind::PhysicalDevice, "card reader", SpecificityScore{3}});
  f1.profile.add_item({DimensionKind::UserProfile, "daily commuter", SpecificityScore{2}});
  f1.profile.add_item({DimensionKind::UserProfile, "first-time visitor", SpecificityScore{4}});

  CsvTable heuristics = read_csv_file(fixture_path("f1_heuristics.csv"));
  for (auto &h : import_heuristics_csv(heuristics, {})) {
    h.status = HeuristicStatus::Selected;
    f1.catalog.heuristics.push_back(std::move(h));
  }

  // Per-item scores chosen to make FSI(D1..D5) = 2.0, 1.5, 3.0, 1.0, 2.5.
  auto score_for = [](int index, DimensionKind kind) {
    switch (index) {
    case 2: // isi 2, UC/LD at 4, PD/UP at 2 -> sum 12 -> fsi 1.5
      return (kind == DimensionKind::UsageContext || kind == DimensionKind::LogicalDevice) ? 4 : 2;
    case 5: // isi 4, UC at 4, rest at 2 -> sum 10 -> fsi 2.5
      return kind == DimensionKind::UsageContext ? 4 : 2;
    default: // all dimensions at 4 -> sum 16 -> fsi = isi
      return 4;
    }
  };
  for (const auto &h : f1.catalog.heuristics) {
    for (auto kind : kDimensionKinds) {
      GsiTable table;
      table.heuristic = h.id;
      table.kind = kind;
      for (const auto *item : f1.profile.items_of(kind))
        table.scores[item->label] = SpecificityScore{score_for(h.id.index, kind)};
      f1.tables.push_back(std::move(table));
    }
  }
  f1.matrix = build_matrix(f1.catalog, f1.tables, f1.profile);

  CsvTable problems = read_csv_file(fixture_path("f1_problems.csv"));
  ImportSummary summary;
  std::vector<HeuristicId> domain_ids;
  for (const auto &h : f1.catalog.heuristics)
    domain_ids.push_back(h.id);
  f1.dataset = import_problems_csv(problems, "F1", domain_ids, default_control_heuristics(),
                                   summary);
  return f1;
}

} // namespace testgen
