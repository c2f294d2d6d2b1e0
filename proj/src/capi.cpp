#include "heurbench.h"

#include "core/advisor.hpp"
#include "core/error.hpp"
#include "core/persist.hpp"
#include "core/project.hpp"

#include <json.hpp>

#include <cstring>
#include <new>
#include <sstream>
#include <string>

using namespace heurbench;

struct hb_project {
  ProjectState state;
};

struct hb_lock {
  FileLock lock;
};

namespace {

thread_local std::string g_last_error;

hb_status status_for(Errc code) {
  switch (code) {
  case Errc::IoFailure:
  case Errc::SchemaViolation:
  case Errc::UnsupportedVersion:
    return HB_ERR_IO;
  case Errc::Usage:
    return HB_ERR_USAGE;
  default:
    return HB_ERR_VALIDATION;
  }
}

char *dup_string(const std::string &text) {
  char *out = new (std::nothrow) char[text.size() + 1];
  if (out)
    std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

void set_out(char **out, const std::string &text) {
  if (out)
    *out = dup_string(text);
}

const char *required(const char *value, const char *what) {
  if (!value || !*value)
    fail(Errc::Usage, std::string(what) + " is required");
  return value;
}

template <typename Fn> hb_status guarded(Fn &&fn) {
  try {
    fn();
    g_last_error.clear();
    return HB_OK;
  } catch (const Error &e) {
    g_last_error = e.what();
    return status_for(e.code());
  } catch (const std::exception &e) {
    g_last_error = e.what();
    return HB_ERR_VALIDATION;
  }
}

std::vector<std::string> split(const std::string &text, char separator) {
  std::vector<std::string> parts;
  std::string current;
  for (char c : text) {
    if (c == separator) {
      parts.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  parts.push_back(current);
  return parts;
}

std::vector<std::string> split_nonempty(const char *text, char separator) {
  std::vector<std::string> parts;
  if (!text)
    return parts;
  for (auto &part : split(text, separator)) {
    // trim surrounding spaces
    std::size_t begin = part.find_first_not_of(" \t");
    std::size_t end = part.find_last_not_of(" \t");
    if (begin != std::string::npos)
      parts.push_back(part.substr(begin, end - begin + 1));
  }
  return parts;
}

std::vector<HeuristicId> parse_ids(const char *text, const char *what) {
  std::vector<HeuristicId> ids;
  for (const auto &token : split_nonempty(text, ','))
    ids.push_back(HeuristicId::parse(token));
  if (ids.empty())
    fail(Errc::Usage, std::string(what) + " must list at least one heuristic id");
  return ids;
}

HeuristicTemplate template_from_json_text(const std::string &text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error &e) {
    fail(Errc::InvalidTemplate, "template is not valid JSON: " + std::string(e.what()));
  }
  auto str = [&](const char *key) -> std::string {
    if (!doc.contains(key) || !doc[key].is_string())
      fail(Errc::InvalidTemplate, std::string("template field '") + key + "' must be a string");
    return doc[key].get<std::string>();
  };
  HeuristicTemplate t;
  t.heuristic = HeuristicId::parse(str("heuristic"));
  t.name = str("name");
  t.description = str("description");
  if (!doc.contains("examples") || !doc["examples"].is_array())
    fail(Errc::InvalidTemplate, "template field 'examples' must be an array");
  for (const auto &entry : doc["examples"]) {
    TemplateExample example;
    std::string kind = entry.value("kind", "");
    if (kind == "compliance")
      example.kind = TemplateExample::Kind::Compliance;
    else if (kind == "non_compliance")
      example.kind = TemplateExample::Kind::NonCompliance;
    else
      fail(Errc::InvalidTemplate, "example kind must be compliance or non_compliance");
    example.text = entry.value("text", "");
    t.examples.push_back(std::move(example));
  }
  t.benefits = str("benefits");
  t.problems = str("problems");
  t.application_context = str("application_context");
  if (doc.contains("related_heuristics")) {
    if (!doc["related_heuristics"].is_array())
      fail(Errc::InvalidTemplate, "related_heuristics must be an array of ids");
    for (const auto &id : doc["related_heuristics"])
      t.related_heuristics.push_back(HeuristicId::parse(id.get<std::string>()));
  }
  if (!doc.contains("checklist") || !doc["checklist"].is_array())
    fail(Errc::InvalidTemplate, "template field 'checklist' must be an array");
  for (const auto &step : doc["checklist"])
    t.checklist.push_back(step.get<std::string>());
  return t;
}

} // namespace

extern "C" {

const char *hb_version(void) { return "1.0.0"; }

const char *hb_last_error(void) { return g_last_error.c_str(); }

void hb_string_free(char *text) { delete[] text; }

hb_project *hb_project_new(const char *domain_name) {
  hb_project *project = nullptr;
  guarded([&] {
    required(domain_name, "domain name");
    project = new hb_project{init_project(domain_name)};
  });
  return project;
}

hb_status hb_project_load(const char *path, hb_project **out) {
  return guarded([&] {
    required(path, "path");
    if (!out)
      fail(Errc::Usage, "output handle is required");
    *out = new hb_project{load_project(path)};
  });
}

hb_status hb_project_save(hb_project *project, const char *path) {
  return guarded([&] {
    required(path, "path");
    save_project(project->state, path);
  });
}

void hb_project_free(hb_project *project) { delete project; }

hb_status hb_lock_acquire(const char *path, hb_lock **out) {
  return guarded([&] {
    required(path, "path");
    if (!out)
      fail(Errc::Usage, "output handle is required");
    *out = new hb_lock{FileLock(path)};
  });
}

void hb_lock_release(hb_lock *lock) { delete lock; }

hb_status hb_dimension_add(hb_project *project, const char *kind, const char *label,
                           int specificity) {
  return guarded([&] {
    add_dimension_item(project->state, parse_dimension_kind(required(kind, "kind")),
                       required(label, "label"), specificity);
  });
}

hb_status hb_keyword_add(hb_project *project, const char *keyword) {
  return guarded([&] { add_keyword(project->state, required(keyword, "keyword")); });
}

hb_status hb_heuristics_import_csv(hb_project *project, const char *csv_path, char **summary_out) {
  return guarded([&] {
    CsvTable table = read_csv_file(required(csv_path, "csv path"));
    ImportSummary summary = import_heuristics(project->state, table);
    set_out(summary_out, "imported " + std::to_string(summary.imported) + " heuristics\n");
  });
}

hb_status hb_heuristic_list(const hb_project *project, char **text_out) {
  return guarded([&] { set_out(text_out, list_heuristics(project->state)); });
}

hb_status hb_isi_set(hb_project *project, const char *heuristic_id, int isi) {
  return guarded([&] {
    set_isi(project->state, HeuristicId::parse(required(heuristic_id, "heuristic id")), isi);
  });
}

hb_status hb_conflict_declare(hb_project *project, const char *conflict_kind, const char *members,
                              const char *note, int *conflict_id_out) {
  return guarded([&] {
    std::string kind = required(conflict_kind, "conflict kind");
    ConflictNote::Kind parsed;
    if (kind == "duplication")
      parsed = ConflictNote::Kind::Duplication;
    else if (kind == "overlap")
      parsed = ConflictNote::Kind::Overlap;
    else
      fail(Errc::Usage, "conflict kind must be duplication or overlap");
    int id = declare_conflict(project->state, parsed, parse_ids(members, "members"),
                              note ? note : "");
    if (conflict_id_out)
      *conflict_id_out = id;
  });
}

hb_status hb_normalize_apply(hb_project *project, int conflict_id, const char *action,
                             const char *kept_id, const char *inputs, const char *new_specs,
                             const char *rationale, char **summary_out) {
  return guarded([&] {
    NormalizationAction parsed;
    parsed.resolves = conflict_id;
    parsed.rationale = rationale ? rationale : "";
    std::string kind = required(action, "action");
    if (kind == "keep")
      parsed.kind = NormalizationAction::Kind::KeepOneDiscardRest;
    else if (kind == "merge")
      parsed.kind = NormalizationAction::Kind::MergeReformulate;
    else if (kind == "group")
      parsed.kind = NormalizationAction::Kind::GroupUnderGeneral;
    else if (kind == "split")
      parsed.kind = NormalizationAction::Kind::SplitIntoSeveral;
    else
      fail(Errc::Usage, "action must be keep, merge, group or split");

    if (kept_id && *kept_id)
      parsed.kept = HeuristicId::parse(kept_id);
    parsed.inputs = parse_ids(inputs, "inputs");

    int next_index = project->state.catalog.next_new_index();
    for (const auto &spec : split_nonempty(new_specs, '\n')) {
      auto fields = split(spec, '|');
      if (fields.size() != 3)
        fail(Errc::Usage, "new heuristic spec must be 'name|statement|isi': " + spec);
      Heuristic created;
      created.id = HeuristicId{std::string(kNewSetId), next_index++};
      created.name = fields[0];
      created.statement = fields[1];
      Rational isi = Rational::parse(fields[2]);
      if (!isi.is_integer())
        fail(Errc::Usage, "isi must be an integer 0..4: " + fields[2]);
      created.isi = SpecificityScore::of(static_cast<int>(isi.numer()));
      parsed.new_heuristics.push_back(std::move(created));
    }

    apply_normalization(project->state, std::move(parsed));
    std::ostringstream out;
    out << "conflict " << conflict_id << " resolved (" << kind << ")\n";
    for (const auto &h : project->state.catalog.actions.back().new_heuristics)
      out << "created " << h.id.canonical() << " '" << h.name << "'\n";
    set_out(summary_out, out.str());
  });
}

hb_status hb_normalize_status(const hb_project *project, char **text_out) {
  return guarded([&] { set_out(text_out, normalization_status_text(project->state)); });
}

hb_status hb_gsi_set(hb_project *project, const char *heuristic_id, const char *kind,
                     const char *label, int score) {
  return guarded([&] {
    set_gsi_score(project->state, HeuristicId::parse(required(heuristic_id, "heuristic id")),
                  parse_dimension_kind(required(kind, "kind")), required(label, "label"), score);
  });
}

hb_status hb_matrix_build(hb_project *project, char **table_out) {
  return guarded([&] {
    const SpecificityMatrix &matrix = build_matrix_artifact(project->state);
    set_out(table_out, matrix.to_text());
  });
}

hb_status hb_matrix_show(const hb_project *project, char **table_out) {
  return guarded([&] {
    if (!project->state.matrix)
      fail(Errc::PrerequisiteMissing, "no specificity matrix built yet");
    set_out(table_out, project->state.matrix->to_text());
  });
}

hb_status hb_select(hb_project *project, const char *threshold, char **summary_out) {
  return guarded([&] {
    Rational value = Rational::parse(required(threshold, "threshold"));
    auto selected = select_by_threshold(project->state, value);
    std::ostringstream out;
    out << "selected " << selected.size() << " heuristics (fsi >= "
        << value.to_decimal_string() << "):";
    for (const auto &id : selected)
      out << " " << id.canonical();
    out << "\n";
    set_out(summary_out, out.str());
  });
}

hb_status hb_template_set_json(hb_project *project, const char *template_json) {
  return guarded([&] {
    set_template(project->state, template_from_json_text(required(template_json, "template")));
  });
}

hb_status hb_template_validate(const hb_project *project, const char *heuristic_id,
                               char **report_out) {
  return guarded([&] {
    HeuristicId id = HeuristicId::parse(required(heuristic_id, "heuristic id"));
    const HeuristicTemplate *t = project->state.find_template(id);
    if (!t)
      fail(Errc::UnknownId, "no template recorded for " + id.canonical());
    ValidationReport report = validate_template(*t, project->state.catalog);
    std::string text = report.to_text();
    for (const auto &note : lint_template(*t))
      text += "lint: " + note + "\n";
    set_out(report_out, text);
    if (!report.ok())
      fail(Errc::InvalidTemplate, report.to_text());
  });
}

hb_status hb_template_render(const hb_project *project, const char *heuristic_id, char **doc_out) {
  return guarded([&] {
    HeuristicId id = HeuristicId::parse(required(heuristic_id, "heuristic id"));
    set_out(doc_out, render_template_text(project->state, id));
  });
}

hb_status hb_template_import(hb_project *project, const char *document) {
  return guarded([&] {
    set_template(project->state, parse_template(required(document, "document")));
  });
}

hb_status hb_eval_import_csv(hb_project *project, const char *case_study, const char *csv_path,
                             const char *controls, char **summary_out) {
  return guarded([&] {
    CsvTable table = read_csv_file(required(csv_path, "csv path"));
    ImportSummary summary = import_problems(project->state, required(case_study, "case study"),
                                            table, split_nonempty(controls, ','));
    std::ostringstream out;
    out << "imported " << summary.imported << " problems for case '" << case_study << "'\n";
    for (const auto &warning : summary.warnings)
      out << "warning: " << warning << "\n";
    set_out(summary_out, out.str());
  });
}

hb_status hb_indicators(hb_project *project, const char *case_study, char **report_out) {
  return guarded([&] {
    std::ostringstream out;
    if (case_study && *case_study) {
      const ReportEntry &entry = compute_indicators(project->state, case_study);
      out << report_to_text(entry.report, entry.case_study);
    } else {
      if (project->state.datasets.empty())
        fail(Errc::PrerequisiteMissing, "no evaluation datasets imported yet");
      for (const auto &dataset : project->state.datasets) {
        const ReportEntry &entry = compute_indicators(project->state, dataset.case_study);
        out << report_to_text(entry.report, entry.case_study);
      }
    }
    set_out(report_out, out.str());
  });
}

hb_status hb_advise(hb_project *project, const char *case_study, char **advice_out) {
  return guarded([&] {
    std::ostringstream out;
    if (case_study && *case_study) {
      const ReportEntry &entry = get_or_compute_report(project->state, case_study);
      out << "case: " << entry.case_study << "\n"
          << advice_to_text(entry.advice, entry.report);
    } else {
      if (project->state.datasets.empty())
        fail(Errc::PrerequisiteMissing, "no evaluation datasets imported yet");
      for (const auto &dataset : project->state.datasets) {
        const ReportEntry &entry = get_or_compute_report(project->state, dataset.case_study);
        out << "case: " << entry.case_study << "\n"
            << advice_to_text(entry.advice, entry.report);
      }
    }
    set_out(advice_out, out.str());
  });
}

hb_status hb_loopback(hb_project *project, int target_stage, const char *reason, int force,
                      char **summary_out) {
  return guarded([&] {
    loop_back(project->state, target_stage, required(reason, "reason"), force != 0);
    std::ostringstream out;
    out << "looped back to stage " << target_stage << "; iteration is now "
        << project->state.iteration << "\n";
    set_out(summary_out, out.str());
  });
}

hb_status hb_stage_advance(hb_project *project, int stage, int exit_early, char **summary_out) {
  return guarded([&] {
    advance_stage(project->state, stage, exit_early != 0);
    std::ostringstream out;
    out << "stage " << stage << " (" << stage_title(stage) << ") complete\n";
    if (project->state.outcome == Outcome::ExitedAtStage2)
      out << "project exited at stage 2: an existing validated heuristic set covers the domain\n";
    if (project->state.outcome == Outcome::Validated)
      out << "domain heuristics validated\n";
    set_out(summary_out, out.str());
  });
}

hb_status hb_export_chart(const hb_project *project, char **csv_out) {
  return guarded([&] { set_out(csv_out, export_chart_csv(project->state)); });
}

hb_status hb_status_text(const hb_project *project, char **text_out) {
  return guarded([&] { set_out(text_out, status_text(project->state)); });
}

} // extern "C"
