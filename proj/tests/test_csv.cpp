#include "core/csv.hpp"
#include "core/error.hpp"
#include "core/import.hpp"
#include "support/generators.hpp"

#include <doctest.h>

using namespace heurbench;

TEST_CASE("plain csv parses into header and rows") {
  CsvTable table = parse_csv("a,b,c\n1,2,3\n4,5,6\n");
  CHECK(table.header == std::vector<std::string>{"a", "b", "c"});
  REQUIRE(table.rows.size() == 2);
  CHECK(table.rows[1] == std::vector<std::string>{"4", "5", "6"});
  CHECK(table.row_lines == std::vector<std::size_t>{2, 3});
  CHECK(table.column("b") == 1);
  CHECK(table.column("missing") == -1);
}

TEST_CASE("crlf and lf parse identically") {
  CsvTable lf = parse_csv("a,b\nx,y\n");
  CsvTable crlf = parse_csv("a,b\r\nx,y\r\n");
  CHECK(lf.header == crlf.header);
  CHECK(lf.rows == crlf.rows);
}

TEST_CASE("quoted fields keep commas, quotes and newlines") {
  CsvTable table = parse_csv("a,b\n\"x, with comma\",\"say \"\"hi\"\"\"\n\"two\nlines\",z\n");
  REQUIRE(table.rows.size() == 2);
  CHECK(table.rows[0][0] == "x, with comma");
  CHECK(table.rows[0][1] == "say \"hi\"");
  CHECK(table.rows[1][0] == "two\nlines");
}

TEST_CASE("missing trailing newline still yields the last row") {
  CsvTable table = parse_csv("a,b\n1,2");
  REQUIRE(table.rows.size() == 1);
  CHECK(table.rows[0][1] == "2");
}

TEST_CASE("malformed csv is rejected with a line number") {
  CHECK_THROWS_WITH_AS(parse_csv("a,b\n1,2,3\n"), doctest::Contains("line 2"), Error);
  CHECK_THROWS_WITH_AS(parse_csv("a,b\n\"open,2\n"), doctest::Contains("unterminated"), Error);
  CHECK_THROWS_AS(parse_csv(""), Error);
  CHECK_THROWS_WITH_AS(parse_csv("a,b\nx\"y,2\n"), doctest::Contains("quote"), Error);
}

TEST_CASE("reading a missing file is an io failure") {
  try {
    read_csv_file("/nonexistent/heurbench.csv");
    FAIL("expected an error");
  } catch (const Error &e) {
    CHECK(e.code() == Errc::IoFailure);
  }
}

TEST_CASE("heuristic import validates every cell") {
  auto header = std::vector<std::string>{"set_id", "index", "name", "statement", "isi"};

  SUBCASE("well-formed rows import with found origin") {
    auto table = testgen::make_table(header, {{"S1", "1", "n1", "s1", "3"},
                                              {"S1", "2", "n2", "s2", "0"}});
    auto imported = import_heuristics_csv(table, {});
    REQUIRE(imported.size() == 2);
    CHECK(imported[0].id.canonical() == "S1.H1");
    CHECK(imported[0].origin.kind == Origin::Kind::Found);
    CHECK(imported[0].status == HeuristicStatus::Denormalized);
  }
  SUBCASE("isi outside the scale is a malformed row") {
    auto table = testgen::make_table(header, {{"S1", "1", "n", "s", "5"}});
    try {
      import_heuristics_csv(table, {});
      FAIL("expected an error");
    } catch (const Error &e) {
      CHECK(e.code() == Errc::MalformedRow);
      CHECK(std::string(e.what()).find("line 2, column isi") != std::string::npos);
    }
  }
  SUBCASE("duplicate ids are rejected, also against existing heuristics") {
    auto table = testgen::make_table(header, {{"S1", "1", "a", "s", "1"},
                                              {"S1", "1", "b", "s", "2"}});
    CHECK_THROWS_AS(import_heuristics_csv(table, {}), Error);

    auto second = testgen::make_table(header, {{"S1", "1", "a", "s", "1"}});
    std::vector<Heuristic> existing = {{{"S1", 1}, "a", "s", SpecificityScore{1}, Origin::found(),
                                        HeuristicStatus::Denormalized}};
    try {
      import_heuristics_csv(second, existing);
      FAIL("expected an error");
    } catch (const Error &e) {
      CHECK(e.code() == Errc::DuplicateId);
    }
  }
  SUBCASE("the NEW set is rejected at import") {
    auto table = testgen::make_table(header, {{"NEW", "1", "n", "s", "2"}});
    CHECK_THROWS_AS(import_heuristics_csv(table, {}), Error);
  }
  SUBCASE("wrong header is rejected up front") {
    auto table = testgen::make_table({"set", "index", "name", "statement", "isi"},
                                     {{"S1", "1", "n", "s", "2"}});
    CHECK_THROWS_WITH_AS(import_heuristics_csv(table, {}), doctest::Contains("set_id"), Error);
  }
}

TEST_CASE("problem import validates classification coherence") {
  auto header = std::vector<std::string>{"id",      "description",       "classification",
                                         "domain_heuristic", "control_heuristic", "severity",
                                         "control_specificity"};
  std::vector<HeuristicId> domain = {{"D", 1}};
  std::vector<std::string> control = {"N1"};

  auto import_one = [&](std::vector<std::string> row) {
    ImportSummary summary;
    return import_problems_csv(testgen::make_table(header, {std::move(row)}), "case", domain,
                               control, summary);
  };

  CHECK(import_one({"P1", "d", "common", "D.H1", "N1", "3", "2"}).problems.size() == 1);
  CHECK(import_one({"P1", "d", "domain_only", "D.H1", "", "3", ""}).problems.size() == 1);
  CHECK(import_one({"P1", "d", "control_only", "", "N1", "3", "1"}).problems.size() == 1);

  auto expect_malformed = [&](std::vector<std::string> row, const char *column) {
    try {
      import_one(std::move(row));
      FAIL_CHECK("expected rejection for column " << column);
    } catch (const Error &e) {
      CHECK(e.code() == Errc::MalformedRow);
      CHECK(std::string(e.what()).find(column) != std::string::npos);
    }
  };
  expect_malformed({"P1", "d", "common", "D.H1", "", "3", "2"}, "control_heuristic");
  expect_malformed({"P1", "d", "domain_only", "D.H1", "N1", "3", ""}, "control_heuristic");
  expect_malformed({"P1", "d", "domain_only", "", "", "3", ""}, "domain_heuristic");
  expect_malformed({"P1", "d", "control_only", "D.H1", "N1", "3", "1"}, "domain_heuristic");
  expect_malformed({"P1", "d", "domain_only", "D.H1", "", "3", "2"}, "control_specificity");
  expect_malformed({"P1", "d", "domain_only", "D.H2", "", "3", ""}, "domain_heuristic");
  expect_malformed({"P1", "d", "control_only", "", "N9", "3", "1"}, "control_heuristic");
  expect_malformed({"P1", "d", "mixed", "D.H1", "", "3", ""}, "classification");
  expect_malformed({"P1", "d", "domain_only", "D.H1", "", "7", ""}, "severity");
  expect_malformed({"P1", "", "domain_only", "D.H1", "", "3", ""}, "description");

  SUBCASE("missing control specificity imports with a warning") {
    ImportSummary summary;
    auto table = testgen::make_table(header, {{"P1", "d", "control_only", "", "N1", "3", ""}});
    EvaluationDataset dataset = import_problems_csv(table, "case", domain, control, summary);
    CHECK(dataset.problems[0].control_specificity == std::nullopt);
    REQUIRE(summary.warnings.size() == 1);
    CHECK(summary.warnings[0].find("P1") != std::string::npos);
  }
  SUBCASE("duplicate problem ids are rejected") {
    auto table = testgen::make_table(header, {{"P1", "d", "domain_only", "D.H1", "", "3", ""},
                                              {"P1", "d", "domain_only", "D.H1", "", "2", ""}});
    ImportSummary summary;
    try {
      import_problems_csv(table, "case", domain, control, summary);
      FAIL("expected an error");
    } catch (const Error &e) {
      CHECK(e.code() == Errc::DuplicateId);
    }
  }
}

TEST_CASE("quoted descriptions with commas and CRLF import identically") {
  const char *lf = "id,description,classification,domain_heuristic,control_heuristic,severity,"
                   "control_specificity\nP1,\"hard, very hard\",domain_only,D.H1,,3,\n";
  const char *crlf = "id,description,classification,domain_heuristic,control_heuristic,severity,"
                     "control_specificity\r\nP1,\"hard, very hard\",domain_only,D.H1,,3,\r\n";
  ImportSummary s1, s2;
  std::vector<HeuristicId> domain = {{"D", 1}};
  std::vector<std::string> control = {"N1"};
  EvaluationDataset a = import_problems_csv(parse_csv(lf), "case", domain, control, s1);
  EvaluationDataset b = import_problems_csv(parse_csv(crlf), "case", domain, control, s2);
  CHECK(a == b);
  CHECK(a.problems[0].description == "hard, very hard");
}
