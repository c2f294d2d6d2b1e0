// Exercises the shared-library surface exactly as an external client would:
// only heurbench.h, opaque handles and status codes.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <heurbench.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

std::string fixture(const std::string &name) {
  return std::string(HEURBENCH_FIXTURES) + "/" + name;
}

struct Text {
  char *value = nullptr;
  ~Text() { hb_string_free(value); }
  std::string str() const { return value ? value : ""; }
};

struct TempPath {
  std::string path;
  explicit TempPath(const char *name)
      : path((std::filesystem::temp_directory_path() / name).string()) {
    std::remove(path.c_str());
  }
  ~TempPath() {
    std::remove(path.c_str());
    std::remove((path + ".lock").c_str());
  }
};

// Drives a fresh project through the full F1 case study.
hb_project *build_f1_project() {
  hb_project *p = hb_project_new("transit ticketing kiosks");
  REQUIRE(p);

  struct Item {
    const char *kind, *label;
  };
  const Item items[] = {{"UC", "station hall"},      {"UC", "street curb"},
                        {"UC", "noisy concourse"},   {"UC", "rush hour"},
                        {"LD", "touch ui"},          {"LD", "voice prompts"},
                        {"PD", "kiosk touchscreen"}, {"PD", "card reader"},
                        {"UP", "daily commuter"},    {"UP", "first-time visitor"}};
  for (const auto &item : items)
    REQUIRE(hb_dimension_add(p, item.kind, item.label, 3) == HB_OK);
  REQUIRE(hb_keyword_add(p, "kiosk usability") == HB_OK);
  REQUIRE(hb_stage_advance(p, 1, 0, nullptr) == HB_OK);

  REQUIRE(hb_heuristics_import_csv(p, fixture("f1_heuristics.csv").c_str(), nullptr) == HB_OK);
  REQUIRE(hb_stage_advance(p, 2, 0, nullptr) == HB_OK);
  REQUIRE(hb_stage_advance(p, 3, 0, nullptr) == HB_OK);
  REQUIRE(hb_stage_advance(p, 4, 0, nullptr) == HB_OK);

  auto gsi_all = [&](const char *id, int uc, int ld, int pd, int up) {
    for (const auto &item : items) {
      int score = item.kind[0] == 'U' && item.kind[1] == 'C'   ? uc
                  : item.kind[0] == 'L'                        ? ld
                  : item.kind[0] == 'P'                        ? pd
                                                               : up;
      REQUIRE(hb_gsi_set(p, id, item.kind, item.label, score) == HB_OK);
    }
  };
  gsi_all("D.H1", 4, 4, 4, 4); // fsi 2.0
  gsi_all("D.H2", 4, 4, 2, 2); // fsi 1.5
  gsi_all("D.H3", 4, 4, 4, 4); // fsi 3.0
  gsi_all("D.H4", 4, 4, 4, 4); // fsi 1.0
  gsi_all("D.H5", 4, 2, 2, 2); // fsi 2.5

  REQUIRE(hb_matrix_build(p, nullptr) == HB_OK);
  REQUIRE(hb_select(p, "0", nullptr) == HB_OK);
  REQUIRE(hb_stage_advance(p, 5, 0, nullptr) == HB_OK);

  for (const char *id : {"D.H1", "D.H2", "D.H3", "D.H4", "D.H5"}) {
    std::string doc = std::string("{\"heuristic\":\"") + id +
                      "\",\"name\":\"Heuristic\",\"description\":\"What to check.\","
                      "\"examples\":[{\"kind\":\"compliance\",\"text\":\"good\"},"
                      "{\"kind\":\"non_compliance\",\"text\":\"bad\"}],"
                      "\"benefits\":\"fewer drop-offs\",\"problems\":\"narrow reading\","
                      "\"application_context\":\"kiosk flows\",\"related_heuristics\":[],"
                      "\"checklist\":[\"inspect\",\"record\"]}";
    REQUIRE(hb_template_set_json(p, doc.c_str()) == HB_OK);
  }
  REQUIRE(hb_stage_advance(p, 6, 0, nullptr) == HB_OK);

  Text summary;
  REQUIRE(hb_eval_import_csv(p, "F1", fixture("f1_problems.csv").c_str(), nullptr,
                             &summary.value) == HB_OK);
  return p;
}

} // namespace

TEST_CASE("version and error text are always readable") {
  CHECK(std::string(hb_version()).find('.') != std::string::npos);
  CHECK(hb_last_error() != nullptr);
}

TEST_CASE("null and malformed arguments are usage errors") {
  CHECK(hb_project_new(nullptr) == nullptr);
  CHECK(hb_project_new("") == nullptr);
  hb_project *p = hb_project_new("domain");
  REQUIRE(p);
  CHECK(hb_dimension_add(p, "XX", "label", 2) == HB_ERR_VALIDATION);
  CHECK(hb_dimension_add(p, nullptr, "label", 2) == HB_ERR_USAGE);
  CHECK(hb_dimension_add(p, "UC", "label", 9) == HB_ERR_VALIDATION);
  CHECK(std::string(hb_last_error()).find("0..4") != std::string::npos);
  hb_project_free(p);
}

TEST_CASE("load failures map to io status") {
  hb_project *p = nullptr;
  CHECK(hb_project_load("/nonexistent/path.json", &p) == HB_ERR_IO);
  CHECK(p == nullptr);
}

TEST_CASE("full F1 pipeline through the C API") {
  hb_project *p = build_f1_project();

  Text report;
  REQUIRE(hb_indicators(p, "F1", &report.value) == HB_OK);
  std::string text = report.str();
  CHECK(text.find("phi") != std::string::npos);
  CHECK(text.find("1.5000  (3/2") != std::string::npos);
  CHECK(text.find("1.3333  (4/3") != std::string::npos);
  CHECK(text.find("0.8292") != std::string::npos);
  CHECK(text.find("1.2857  (9/7") != std::string::npos);
  CHECK(text.find("1.2917  (31/24") != std::string::npos);

  REQUIRE(hb_stage_advance(p, 7, 0, nullptr) == HB_OK);

  Text advice;
  REQUIRE(hb_advise(p, "F1", &advice.value) == HB_OK);
  CHECK(advice.str().find("refinement suggested") != std::string::npos);
  CHECK(advice.str().find("delta") != std::string::npos);
  CHECK(advice.str().find("revisit stages 4 5 6") != std::string::npos);
  // Component counts ride along with the advice.
  CHECK(advice.str().find("domain_only=6") != std::string::npos);
  CHECK(advice.str().find("control_only=4") != std::string::npos);

  Text chart;
  REQUIRE(hb_export_chart(p, &chart.value) == HB_OK);
  CHECK(chart.str().find("# reference_value=1\n") == 0);
  CHECK(chart.str().find("F1,phi,1.5000,true") != std::string::npos);
  CHECK(chart.str().find("F1,epsilon,1.2917,true") != std::string::npos);

  Text status;
  REQUIRE(hb_status_text(p, &status.value) == HB_OK);
  CHECK(status.str().find("stage 7 (validation): complete") != std::string::npos);

  SUBCASE("save, reload and compare derived values") {
    TempPath file("hb_capi_project.json");
    REQUIRE(hb_project_save(p, file.path.c_str()) == HB_OK);
    hb_project *loaded = nullptr;
    REQUIRE(hb_project_load(file.path.c_str(), &loaded) == HB_OK);
    Text chart_again;
    REQUIRE(hb_export_chart(loaded, &chart_again.value) == HB_OK);
    CHECK(chart_again.str() == chart.str());
    hb_project_free(loaded);
  }

  SUBCASE("render a template; re-import is refused once stage 6 closed") {
    Text doc;
    REQUIRE(hb_template_render(p, "D.H1", &doc.value) == HB_OK);
    CHECK(doc.str().find("Identifier: D.H1") == 0);
    CHECK(hb_template_import(p, doc.str().c_str()) == HB_ERR_VALIDATION);
    CHECK(std::string(hb_last_error()).find("stage 6") != std::string::npos);
  }

  hb_project_free(p);
}

TEST_CASE("normalization flow over the C API") {
  hb_project *p = hb_project_new("domain");
  REQUIRE(p);
  for (const char *kind : {"UC", "LD", "PD", "UP"})
    REQUIRE(hb_dimension_add(p, kind, "item", 2) == HB_OK);
  REQUIRE(hb_keyword_add(p, "keyword") == HB_OK);
  REQUIRE(hb_stage_advance(p, 1, 0, nullptr) == HB_OK);

  TempPath csv("hb_capi_heuristics.csv");
  {
    std::ofstream out(csv.path);
    out << "set_id,index,name,statement,isi\n";
    out << "S1,1,First,Statement one,2\n";
    out << "S1,2,Second,Statement two,3\n";
    out << "S2,1,Third,Statement three,1\n";
  }
  REQUIRE(hb_heuristics_import_csv(p, csv.path.c_str(), nullptr) == HB_OK);
  REQUIRE(hb_stage_advance(p, 2, 0, nullptr) == HB_OK);
  REQUIRE(hb_isi_set(p, "S1.H1", 4) == HB_OK);
  REQUIRE(hb_stage_advance(p, 3, 0, nullptr) == HB_OK);

  int conflict_id = 0;
  REQUIRE(hb_conflict_declare(p, "duplication", "S1.H1,S2.H1", "same idea", &conflict_id) ==
          HB_OK);
  CHECK(conflict_id == 1);

  // Unresolved conflicts block stage 4.
  CHECK(hb_stage_advance(p, 4, 0, nullptr) == HB_ERR_VALIDATION);

  Text norm_status;
  REQUIRE(hb_normalize_status(p, &norm_status.value) == HB_OK);
  CHECK(norm_status.str().find("normalized: no") != std::string::npos);

  Text apply_out;
  REQUIRE(hb_normalize_apply(p, conflict_id, "merge", nullptr, "S1.H1,S2.H1",
                             "Combined|Both statements merged.|3", "overlapping ideas",
                             &apply_out.value) == HB_OK);
  CHECK(apply_out.str().find("created NEW.H1") != std::string::npos);

  Text norm_status2;
  REQUIRE(hb_normalize_status(p, &norm_status2.value) == HB_OK);
  CHECK(norm_status2.str().find("normalized: yes") != std::string::npos);
  CHECK(norm_status2.str().find("replay consistent") != std::string::npos);

  // Re-resolving the same conflict is stale.
  CHECK(hb_normalize_apply(p, conflict_id, "keep", "S1.H2", "NEW.H1", nullptr, "changed my mind",
                           nullptr) == HB_ERR_VALIDATION);

  REQUIRE(hb_stage_advance(p, 4, 0, nullptr) == HB_OK);
  Text list;
  REQUIRE(hb_heuristic_list(p, &list.value) == HB_OK);
  CHECK(list.str().find("NEW.H1") != std::string::npos);
  CHECK(list.str().find("discarded") != std::string::npos);
  hb_project_free(p);
}

TEST_CASE("early exit at stage 2") {
  hb_project *p = hb_project_new("domain");
  REQUIRE(p);
  for (const char *kind : {"UC", "LD", "PD", "UP"})
    REQUIRE(hb_dimension_add(p, kind, "item", 2) == HB_OK);
  REQUIRE(hb_keyword_add(p, "keyword") == HB_OK);
  REQUIRE(hb_stage_advance(p, 1, 0, nullptr) == HB_OK);
  TempPath csv("hb_capi_exit.csv");
  {
    std::ofstream out(csv.path);
    out << "set_id,index,name,statement,isi\nS1,1,Existing,Validated set found,2\n";
  }
  REQUIRE(hb_heuristics_import_csv(p, csv.path.c_str(), nullptr) == HB_OK);
  Text out;
  REQUIRE(hb_stage_advance(p, 2, 1, &out.value) == HB_OK);
  CHECK(out.str().find("exited at stage 2") != std::string::npos);
  CHECK(hb_stage_advance(p, 3, 0, nullptr) == HB_ERR_VALIDATION);
  hb_project_free(p);
}

TEST_CASE("locks are acquirable and releasable") {
  TempPath file("hb_capi_lock.json");
  hb_lock *lock = nullptr;
  REQUIRE(hb_lock_acquire(file.path.c_str(), &lock) == HB_OK);
  REQUIRE(lock);
  hb_lock_release(lock);
  REQUIRE(hb_lock_acquire(file.path.c_str(), &lock) == HB_OK);
  hb_lock_release(lock);
}
