#include "core/error.hpp"
#include "core/specificity.hpp"
#include "support/fixtures.hpp"

#include <doctest.h>

#include <random>

using namespace heurbench;

namespace {

DomainProfile four_context_profile() {
  DomainProfile profile;
  profile.domain_name = "d";
  for (const char *label : {"indoor", "outdoor", "noisy", "quiet"})
    profile.add_item({DimensionKind::UsageContext, label, SpecificityScore{2}});
  return profile;
}

GsiTable uc_row(int a, int b, int c, int d) {
  GsiTable table;
  table.heuristic = {"S3", 2};
  table.kind = DimensionKind::UsageContext;
  table.scores["indoor"] = SpecificityScore{a};
  table.scores["outdoor"] = SpecificityScore{b};
  table.scores["noisy"] = SpecificityScore{c};
  table.scores["quiet"] = SpecificityScore{d};
  return table;
}

} // namespace

TEST_CASE("dimension means over the usage-context rows") {
  auto profile = four_context_profile();
  CHECK(compute_gsi(uc_row(4, 4, 4, 4), profile) == Rational(4));
  CHECK(compute_gsi(uc_row(4, 0, 0, 0), profile) == Rational(1));
  CHECK(compute_gsi(uc_row(4, 2, 2, 4), profile) == Rational(3));
}

TEST_CASE("incomplete or overfull rows are rejected") {
  auto profile = four_context_profile();
  auto table = uc_row(4, 2, 2, 4);
  table.scores.erase("noisy");
  CHECK_THROWS_WITH_AS(compute_gsi(table, profile),
                       doctest::Contains("missing scores for: noisy"), Error);
  table = uc_row(4, 2, 2, 4);
  table.scores["basement"] = SpecificityScore{1};
  CHECK_THROWS_WITH_AS(compute_gsi(table, profile), doctest::Contains("unknown item"), Error);
}

TEST_CASE("gsi mean stays within the row's extremes") {
  auto profile = four_context_profile();
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> likert(0, 4);
  for (int i = 0; i < 1000; ++i) {
    int a = likert(rng), b = likert(rng), c = likert(rng), d = likert(rng);
    Rational mean = compute_gsi(uc_row(a, b, c, d), profile);
    CHECK(mean >= Rational(std::min({a, b, c, d})));
    CHECK(mean <= Rational(std::max({a, b, c, d})));
  }
}

TEST_CASE("final specificity index reproduces the worked examples") {
  CHECK(compute_fsi(SpecificityScore{3}, Rational(4), Rational(2), Rational(1), Rational(3)) ==
        Rational(15, 8)); // 1.875
  CHECK(compute_fsi(SpecificityScore{1}, Rational(1), Rational(2), Rational(4), Rational(0)) ==
        Rational(7, 16)); // 0.4375
  CHECK(compute_fsi(SpecificityScore{1}, Rational(3), Rational(2), Rational(3), Rational(0)) ==
        Rational(1, 2)); // 0.5
}

TEST_CASE("fsi boundary cases") {
  for (int g = 0; g <= 4; ++g)
    CHECK(compute_fsi(SpecificityScore{0}, Rational(g), Rational(g), Rational(g), Rational(g)) ==
          Rational(0));
  CHECK(compute_fsi(SpecificityScore{4}, Rational(4), Rational(4), Rational(4), Rational(4)) ==
        Rational(4));
  CHECK_THROWS_AS(
      compute_fsi(SpecificityScore{2}, Rational(5), Rational(0), Rational(0), Rational(0)), Error);
  CHECK_THROWS_AS(
      compute_fsi(SpecificityScore{2}, Rational(-1, 2), Rational(0), Rational(0), Rational(0)),
      Error);
}

TEST_CASE("fsi is exact, bounded and monotone") {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> likert(0, 4);
  std::uniform_int_distribution<int> quarters(0, 16);
  for (int i = 0; i < 10000; ++i) {
    SpecificityScore isi{likert(rng)};
    Rational uc(quarters(rng), 4), pd(quarters(rng), 4), ld(quarters(rng), 4),
        up(quarters(rng), 4);
    Rational fsi = compute_fsi(isi, uc, pd, ld, up);
    CHECK(fsi >= Rational(0));
    CHECK(fsi <= Rational(4));

    // Non-decreasing in isi, strictly when some mean is positive.
    if (isi.value < 4) {
      Rational bumped = compute_fsi(SpecificityScore{isi.value + 1}, uc, pd, ld, up);
      CHECK(bumped >= fsi);
      if (uc + pd + ld + up > Rational(0))
        CHECK(bumped > fsi);
    }
    // Non-decreasing in each mean, strictly when isi is positive.
    if (uc < Rational(4)) {
      Rational bumped = compute_fsi(isi, uc + Rational(1, 4), pd, ld, up);
      CHECK(bumped >= fsi);
      if (isi.value > 0)
        CHECK(bumped > fsi);
    }
  }
}

TEST_CASE("matrix rows sort by fsi, then isi, then id") {
  auto f1 = testgen::load_f1();
  REQUIRE(f1.matrix.rows.size() == 5);
  CHECK(f1.matrix.rows[0].heuristic.canonical() == "D.H3"); // fsi 3.0
  CHECK(f1.matrix.rows[1].heuristic.canonical() == "D.H5"); // fsi 2.5
  CHECK(f1.matrix.rows[2].heuristic.canonical() == "D.H1"); // fsi 2.0
  CHECK(f1.matrix.rows[3].heuristic.canonical() == "D.H2"); // fsi 1.5
  CHECK(f1.matrix.rows[4].heuristic.canonical() == "D.H4"); // fsi 1.0
  CHECK(f1.matrix.rows[0].fsi == Rational(3));
  CHECK(f1.matrix.rows[1].fsi == Rational(5, 2));
  CHECK(f1.matrix.rows[2].fsi == Rational(2));
  CHECK(f1.matrix.rows[3].fsi == Rational(3, 2));
  CHECK(f1.matrix.rows[4].fsi == Rational(1));
}

TEST_CASE("worked matrix example ranks 1.875 over 0.5 over 0.4375") {
  DomainProfile profile = four_context_profile();
  for (const char *label : {"touch", "voice"})
    profile.add_item({DimensionKind::LogicalDevice, label, SpecificityScore{2}});
  for (const char *label : {"phone", "tablet"})
    profile.add_item({DimensionKind::PhysicalDevice, label, SpecificityScore{2}});
  for (const char *label : {"novice", "expert"})
    profile.add_item({DimensionKind::UserProfile, label, SpecificityScore{2}});

  HeuristicCatalog catalog;
  struct Row {
    HeuristicId id;
    int isi;
    int uc, pd, ld, up;
  };
  // Means encoded as uniform rows: every item scored at the mean value.
  std::vector<Row> rows = {{{"S3", 2}, 3, 4, 2, 1, 3},
                           {{"S3", 3}, 1, 1, 2, 4, 0},
                           {{"S4", 2}, 1, 3, 2, 3, 0}};
  std::vector<GsiTable> tables;
  for (const auto &row : rows) {
    catalog.heuristics.push_back({row.id, "h " + row.id.canonical(), "s", SpecificityScore{row.isi},
                                  Origin::found(), HeuristicStatus::Normalized});
    for (auto [kind, score] : std::vector<std::pair<DimensionKind, int>>{
             {DimensionKind::UsageContext, row.uc},
             {DimensionKind::PhysicalDevice, row.pd},
             {DimensionKind::LogicalDevice, row.ld},
             {DimensionKind::UserProfile, row.up}}) {
      GsiTable table;
      table.heuristic = row.id;
      table.kind = kind;
      for (const auto *item : profile.items_of(kind))
        table.scores[item->label] = SpecificityScore{score};
      tables.push_back(std::move(table));
    }
  }

  SpecificityMatrix matrix = build_matrix(catalog, tables, profile);
  REQUIRE(matrix.rows.size() == 3);
  CHECK(matrix.rows[0].heuristic == HeuristicId{"S3", 2});
  CHECK(matrix.rows[0].fsi == Rational(15, 8));
  CHECK(matrix.rows[1].heuristic == HeuristicId{"S4", 2});
  CHECK(matrix.rows[1].fsi == Rational(1, 2));
  CHECK(matrix.rows[2].heuristic == HeuristicId{"S3", 3});
  CHECK(matrix.rows[2].fsi == Rational(7, 16));

  SUBCASE("selection keeps matrix order and flips statuses") {
    Selection selection = select_heuristics(matrix, Rational(1), catalog);
    REQUIRE(selection.selected.size() == 1);
    CHECK(selection.selected[0] == HeuristicId{"S3", 2});
    CHECK(selection.catalog.find({"S3", 2})->status == HeuristicStatus::Selected);
    CHECK(selection.catalog.find({"S3", 3})->status == HeuristicStatus::Normalized);

    Selection everything = select_heuristics(matrix, Rational(0), selection.catalog);
    CHECK(everything.selected.size() == 3);
    Selection only_max = select_heuristics(matrix, Rational(4), everything.catalog);
    CHECK(only_max.selected.empty());
    CHECK(only_max.catalog.find({"S3", 2})->status == HeuristicStatus::Normalized);
  }

  SUBCASE("missing rows are reported with every gap") {
    tables.erase(tables.begin()); // drop S3.H2's UC row
    CHECK_THROWS_WITH_AS(build_matrix(catalog, tables, profile),
                         doctest::Contains("S3.H2/UC"), Error);
  }

  SUBCASE("equal fsi and isi fall back to id order") {
    // Two heuristics with identical scores; S3.H9 vs S4.H1.
    HeuristicCatalog tie;
    for (HeuristicId id : {HeuristicId{"S4", 1}, HeuristicId{"S3", 9}}) {
      tie.heuristics.push_back({id, "h", "s", SpecificityScore{2}, Origin::found(),
                                HeuristicStatus::Normalized});
      for (auto kind : kDimensionKinds) {
        GsiTable table;
        table.heuristic = id;
        table.kind = kind;
        for (const auto *item : profile.items_of(kind))
          table.scores[item->label] = SpecificityScore{2};
        tables.push_back(std::move(table));
      }
    }
    SpecificityMatrix both = build_matrix(tie, tables, profile);
    REQUIRE(both.rows.size() == 2);
    CHECK(both.rows[0].heuristic == HeuristicId{"S3", 9});
    CHECK(both.rows[1].heuristic == HeuristicId{"S4", 1});
  }
}

TEST_CASE("empty catalog yields an empty matrix") {
  DomainProfile profile = four_context_profile();
  HeuristicCatalog catalog;
  CHECK(build_matrix(catalog, {}, profile).rows.empty());
}

TEST_CASE("matrix building is deterministic") {
  auto f1 = testgen::load_f1();
  SpecificityMatrix again = build_matrix(f1.catalog, f1.tables, f1.profile);
  CHECK(again == f1.matrix);
}

TEST_CASE("discarded heuristics never enter the matrix") {
  auto f1 = testgen::load_f1();
  f1.catalog.find({"D", 5})->status = HeuristicStatus::Discarded;
  SpecificityMatrix matrix = build_matrix(f1.catalog, f1.tables, f1.profile);
  CHECK(matrix.rows.size() == 4);
  CHECK(matrix.find({"D", 5}) == nullptr);
}
