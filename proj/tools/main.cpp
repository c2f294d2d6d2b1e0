// Command-line front end for the heuristic development workbench. Everything
// goes through the C API: this translation unit owns argument parsing, file
// plumbing and exit codes, nothing else.

#include <heurbench.h>

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct ProjectHandle {
  hb_project *project = nullptr;
  ~ProjectHandle() { hb_project_free(project); }
};

struct LockHandle {
  hb_lock *lock = nullptr;
  ~LockHandle() { hb_lock_release(lock); }
};

struct OwnedText {
  char *text = nullptr;
  ~OwnedText() { hb_string_free(text); }
  void print() const {
    if (text)
      std::cout << text;
  }
};

int fail_with(hb_status status) {
  std::cerr << "error: " << hb_last_error() << "\n";
  return static_cast<int>(status);
}

std::string read_file(const std::string &path, bool &ok) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    ok = false;
    return {};
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  ok = true;
  return buffer.str();
}

// Runs `op` over the loaded project; saves back when `mutates` is set.
int with_project(const std::string &path, bool mutates,
                 const std::function<hb_status(hb_project *)> &op) {
  LockHandle lock;
  if (mutates) {
    if (hb_status status = hb_lock_acquire(path.c_str(), &lock.lock); status != HB_OK)
      return fail_with(status);
  }
  ProjectHandle handle;
  if (hb_status status = hb_project_load(path.c_str(), &handle.project); status != HB_OK)
    return fail_with(status);
  if (hb_status status = op(handle.project); status != HB_OK)
    return fail_with(status);
  if (mutates) {
    if (hb_status status = hb_project_save(handle.project, path.c_str()); status != HB_OK)
      return fail_with(status);
  }
  return 0;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"workbench for developing and validating domain-specific usability heuristics"};
  app.require_subcommand(1);
  std::string project_path = "heurbench.json";
  app.add_option("-p,--project", project_path, "project file")->capture_default_str();

  std::vector<std::function<int()>> run;
  auto on = [&](CLI::App *cmd, std::function<int()> fn) {
    cmd->callback([&run, fn] { run.push_back(fn); });
  };

  // init
  {
    auto *cmd = app.add_subcommand("init", "create a new project for a domain");
    auto domain = std::make_shared<std::string>();
    cmd->add_option("--domain", *domain, "domain under study")->required();
    on(cmd, [&, domain] {
      std::ifstream existing(project_path);
      if (existing) {
        std::cerr << "error: '" << project_path << "' already exists\n";
        return 1;
      }
      ProjectHandle handle;
      handle.project = hb_project_new(domain->c_str());
      if (!handle.project)
        return fail_with(HB_ERR_VALIDATION);
      if (hb_status status = hb_project_save(handle.project, project_path.c_str());
          status != HB_OK)
        return fail_with(status);
      std::cout << "initialized project for domain '" << *domain << "' in " << project_path
                << "\n";
      return 0;
    });
  }

  // dimension add
  {
    auto *dimension = app.add_subcommand("dimension", "domain profile dimensions");
    auto *cmd = dimension->add_subcommand("add", "add a dimension item");
    auto kind = std::make_shared<std::string>();
    auto label = std::make_shared<std::string>();
    auto score = std::make_shared<int>(0);
    cmd->add_option("kind", *kind, "UC, LD, PD or UP")->required();
    cmd->add_option("label", *label, "item label")->required();
    cmd->add_option("specificity", *score, "initial specificity 0..4")->required();
    on(cmd, [&, kind, label, score] {
      return with_project(project_path, true, [&](hb_project *p) {
        return hb_dimension_add(p, kind->c_str(), label->c_str(), *score);
      });
    });
  }

  // keyword add
  {
    auto *keyword = app.add_subcommand("keyword", "literature search keywords");
    auto *cmd = keyword->add_subcommand("add", "record a search keyword");
    auto word = std::make_shared<std::string>();
    cmd->add_option("keyword", *word, "keyword")->required();
    on(cmd, [&, word] {
      return with_project(project_path, true, [&](hb_project *p) {
        return hb_keyword_add(p, word->c_str());
      });
    });
  }

  // heuristic import | list
  {
    auto *heuristic = app.add_subcommand("heuristic", "candidate heuristics");
    auto *import = heuristic->add_subcommand("import", "import heuristics from CSV");
    auto csv = std::make_shared<std::string>();
    import->add_option("file", *csv, "CSV with set_id,index,name,statement,isi")->required();
    on(import, [&, csv] {
      return with_project(project_path, true, [&](hb_project *p) {
        OwnedText out;
        hb_status status = hb_heuristics_import_csv(p, csv->c_str(), &out.text);
        out.print();
        return status;
      });
    });
    auto *list = heuristic->add_subcommand("list", "list recorded heuristics");
    on(list, [&] {
      return with_project(project_path, false, [&](hb_project *p) {
        OwnedText out;
        hb_status status = hb_heuristic_list(p, &out.text);
        out.print();
        return status;
      });
    });
  }

  // isi set
  {
    auto *isi = app.add_subcommand("isi", "initial specificity indices");
    auto *cmd = isi->add_subcommand("set", "set a heuristic's initial specificity");
    auto id = std::make_shared<std::string>();
    auto value = std::make_shared<int>(0);
    cmd->add_option("heuristic", *id, "heuristic id, e.g. S1.H3")->required();
    cmd->add_option("value", *value, "0..4")->required();
    on(cmd, [&, id, value] {
      return with_project(project_path, true, [&](hb_project *p) {
        return hb_isi_set(p, id->c_str(), *value);
      });
    });
  }

  // gsi set
  {
    auto *gsi = app.add_subcommand("gsi", "per-dimension specificity scores");
    auto *cmd = gsi->add_subcommand("set", "score a heuristic against a dimension item");
    auto id = std::make_shared<std::string>();
    auto kind = std::make_shared<std::string>();
    auto label = std::make_shared<std::string>();
    auto score = std::make_shared<int>(0);
    cmd->add_option("heuristic", *id, "heuristic id")->required();
    cmd->add_option("kind", *kind, "UC, LD, PD or UP")->required();
    cmd->add_option("label", *label, "dimension item label")->required();
    cmd->add_option("score", *score, "0..4")->required();
    on(cmd, [&, id, kind, label, score] {
      return with_project(project_path, true, [&](hb_project *p) {
        return hb_gsi_set(p, id->c_str(), kind->c_str(), label->c_str(), *score);
      });
    });
  }

  // matrix build | show
  {
    auto *matrix = app.add_subcommand("matrix", "specificity matrix");
    auto *build = matrix->add_subcommand("build", "compute the ranked specificity matrix");
    on(build, [&] {
      return with_project(project_path, true, [&](hb_project *p) {
        OwnedText out;
        hb_status status = hb_matrix_build(p, &out.text);
        out.print();
        return status;
      });
    });
    auto *show = matrix->add_subcommand("show", "print the stored matrix");
    on(show, [&] {
      return with_project(project_path, false, [&](hb_project *p) {
        OwnedText out;
        hb_status status = hb_matrix_show(p, &out.text);
        out.print();
        return status;
      });
    });
  }

  // select
  {
    auto *cmd = app.add_subcommand("select", "select heuristics with fsi >= threshold");
    auto threshold = std::make_shared<std::string>();
    cmd->add_option("threshold", *threshold, "decimal or fraction in [0,4]")->required();
    on(cmd, [&, threshold] {
      return with_project(project_path, true, [&](hb_project *p) {
        OwnedText out;
        hb_status status = hb_select(p, threshold->c_str(), &out.text);
        out.print();
        return status;
      });
    });
  }

  // normalize declare | apply | status
  {
    auto *normalize = app.add_subcommand("normalize", "duplication/overlap resolution");

    auto *declare = normalize->add_subcommand("declare", "declare a conflict");
    auto kind = std::make_shared<std::string>();
    auto members = std::make_shared<std::string>();
    auto note = std::make_shared<std::string>();
    declare->add_option("--kind", *kind, "duplication or overlap")->required();
    declare->add_option("--members", *members, "comma-separated heuristic ids")->required();
    declare->add_option("--note", *note, "free-text description");
    on(declare, [&, kind, members, note] {
      return with_project(project_path, true, [&](hb_project *p) {
        int conflict_id = 0;
        hb_status status =
            hb_conflict_declare(p, kind->c_str(), members->c_str(), note->c_str(), &conflict_id);
        if (status == HB_OK)
          std::cout << "declared conflict " << conflict_id << "\n";
        return status;
      });
    });

    auto *apply = normalize->add_subcommand("apply", "resolve a conflict");
    auto conflict = std::make_shared<int>(0);
    auto action = std::make_shared<std::string>();
    auto kept = std::make_shared<std::string>();
    auto inputs = std::make_shared<std::string>();
    auto news = std::make_shared<std::vector<std::string>>();
    auto rationale = std::make_shared<std::string>();
    apply->add_option("--conflict", *conflict, "conflict id")->required();
    apply->add_option("--action", *action, "keep, merge, group or split")->required();
    apply->add_option("--keep", *kept, "kept heuristic id (keep action)");
    apply->add_option("--inputs", *inputs, "comma-separated ids discarded/combined/split")
        ->required();
    apply->add_option("--new", *news, "created heuristic as 'name|statement|isi' (repeatable)");
    apply->add_option("--rationale", *rationale, "why this resolution")->required();
    on(apply, [&, conflict, action, kept, inputs, news, rationale] {
      return with_project(project_path, true, [&](hb_project *p) {
        std::string specs;
        for (const auto &entry : *news)
          specs += entry + "\n";
        OwnedText out;
        hb_status status =
            hb_normalize_apply(p, *conflict, action->c_str(), kept->c_str(), inputs->c_str(),
                               specs.c_str(), rationale->c_str(), &out.text);
        out.print();
        return status;
      });
    });

    auto *status_cmd = normalize->add_subcommand("status", "open conflicts and log integrity");
    on(status_cmd, [&] {
      return with_project(project_path, false, [&](hb_project *p) {
        OwnedText out;
        hb_status status = hb_normalize_status(p, &out.text);
        out.print();
        return status;
      });
    });
  }

  // template set | import | validate | render
  {
    auto *tpl = app.add_subcommand("template", "formal heuristic descriptions");

    auto *set = tpl->add_subcommand("set", "store a template from a JSON file");
    auto json_file = std::make_shared<std::string>();
    set->add_option("file", *json_file, "template JSON")->required();
    on(set, [&, json_file] {
      bool ok = false;
      std::string content = read_file(*json_file, ok);
      if (!ok) {
        std::cerr << "error: cannot read '" << *json_file << "'\n";
        return kExitIo;
      }
      return with_project(project_path, true, [&](hb_project *p) {
        return hb_template_set_json(p, content.c_str());
      });
    });

    auto *import = tpl->add_subcommand("import", "re-ingest a rendered template document");
    auto doc_file = std::make_shared<std::string>();
    import->add_option("file", *doc_file, "rendered template text")->required();
    on(import, [&, doc_file] {
      bool ok = false;
      std::string content = read_file(*doc_file, ok);
      if (!ok) {
        std::cerr << "error: cannot read '" << *doc_file << "'\n";
        return kExitIo;
      }
      return with_project(project_path, true, [&](hb_project *p) {
        return hb_template_import(p, content.c_str());
      });
    });

    auto *validate = tpl->add_subcommand("validate", "check a stored template");
    auto validate_id = std::make_shared<std::string>();
    validate->add_option("heuristic", *validate_id, "heuristic id")->required();
    on(validate, [&, validate_id] {
      return with_project(project_path, false, [&](hb_project *p) {
        OwnedText out;
        hb_status status = hb_template_validate(p, validate_id->c_str(), &out.text);
        out.print();
        return status;
      });
    });

    auto *render = tpl->add_subcommand("render", "render a stored template");
    auto render_id = std::make_shared<std::string>();
    auto out_file = std::make_shared<std::string>();
    render->add_option("heuristic", *render_id, "heuristic id")->required();
    render->add_option("-o,--output", *out_file, "write to file instead of stdout");
    on(render, [&, render_id, out_file] {
      return with_project(project_path, false, [&](hb_project *p) {
        OwnedText out;
        hb_status status = hb_template_render(p, render_id->c_str(), &out.text);
        if (status != HB_OK)
          return status;
        if (out_file->empty()) {
          out.print();
        } else {
          std::ofstream file(*out_file, std::ios::binary);
          if (!file) {
            std::cerr << "error: cannot write '" << *out_file << "'\n";
            return HB_ERR_IO;
          }
          file << out.text;
        }
        return HB_OK;
      });
    });
  }

  // eval import
  {
    auto *eval = app.add_subcommand("eval", "heuristic evaluation datasets");
    auto *import = eval->add_subcommand("import", "import recorded problems from CSV");
    auto case_name = std::make_shared<std::string>();
    auto csv = std::make_shared<std::string>();
    auto controls = std::make_shared<std::string>();
    import->add_option("--case", *case_name, "case study name")->required();
    import->add_option("file", *csv, "problems CSV")->required();
    import->add_option("--controls", *controls,
                       "comma-separated control tokens (default N1..N10)");
    on(import, [&, case_name, csv, controls] {
      return with_project(project_path, true, [&](hb_project *p) {
        OwnedText out;
        hb_status status =
            hb_eval_import_csv(p, case_name->c_str(), csv->c_str(), controls->c_str(), &out.text);
        out.print();
        return status;
      });
    });
  }

  // indicators / advise
  {
    auto *cmd = app.add_subcommand("indicators", "compute quality indicators");
    auto case_name = std::make_shared<std::string>();
    cmd->add_option("--case", *case_name, "restrict to one case study");
    on(cmd, [&, case_name] {
      return with_project(project_path, true, [&](hb_project *p) {
        OwnedText out;
        hb_status status = hb_indicators(p, case_name->c_str(), &out.text);
        out.print();
        return status;
      });
    });
  }
  {
    auto *cmd = app.add_subcommand("advise", "refinement advice from the indicators");
    auto case_name = std::make_shared<std::string>();
    cmd->add_option("--case", *case_name, "restrict to one case study");
    on(cmd, [&, case_name] {
      return with_project(project_path, true, [&](hb_project *p) {
        OwnedText out;
        hb_status status = hb_advise(p, case_name->c_str(), &out.text);
        out.print();
        return status;
      });
    });
  }

  // loopback
  {
    auto *cmd = app.add_subcommand("loopback", "reopen an earlier stage for refinement");
    auto stage = std::make_shared<int>(0);
    auto reason = std::make_shared<std::string>();
    auto force = std::make_shared<bool>(false);
    cmd->add_option("stage", *stage, "target stage 1..7")->required();
    cmd->add_option("--reason", *reason, "why the stage is being reopened")->required();
    cmd->add_flag("--override", *force, "allow a target outside the advised revisit set");
    on(cmd, [&, stage, reason, force] {
      return with_project(project_path, true, [&](hb_project *p) {
        OwnedText out;
        hb_status status = hb_loopback(p, *stage, reason->c_str(), *force ? 1 : 0, &out.text);
        out.print();
        return status;
      });
    });
  }

  // stage advance
  {
    auto *stage_cmd = app.add_subcommand("stage", "stage bookkeeping");
    auto *advance = stage_cmd->add_subcommand("advance", "mark a stage complete");
    auto stage = std::make_shared<int>(0);
    auto exit_early = std::make_shared<bool>(false);
    advance->add_option("stage", *stage, "stage 1..8")->required();
    advance->add_flag("--exit-early", *exit_early,
                      "stage 2 only: an existing validated set covers the domain");
    on(advance, [&, stage, exit_early] {
      return with_project(project_path, true, [&](hb_project *p) {
        OwnedText out;
        hb_status status = hb_stage_advance(p, *stage, *exit_early ? 1 : 0, &out.text);
        out.print();
        return status;
      });
    });
  }

  // export chart
  {
    auto *export_cmd = app.add_subcommand("export", "export computed artifacts");
    auto *chart = export_cmd->add_subcommand("chart", "indicator values as plot-ready CSV");
    auto out_file = std::make_shared<std::string>();
    chart->add_option("-o,--output", *out_file, "output CSV path (default stdout)");
    on(chart, [&, out_file] {
      return with_project(project_path, false, [&](hb_project *p) {
        OwnedText out;
        hb_status status = hb_export_chart(p, &out.text);
        if (status != HB_OK)
          return status;
        if (out_file->empty()) {
          out.print();
        } else {
          std::ofstream file(*out_file, std::ios::binary);
          if (!file) {
            std::cerr << "error: cannot write '" << *out_file << "'\n";
            return HB_ERR_IO;
          }
          file << out.text;
        }
        return HB_OK;
      });
    });
  }

  // status
  {
    auto *cmd = app.add_subcommand("status", "stages, iteration and artifact counts");
    on(cmd, [&] {
      return with_project(project_path, false, [&](hb_project *p) {
        OwnedText out;
        hb_status status = hb_status_text(p, &out.text);
        out.print();
        return status;
      });
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    if (e.get_exit_code() == 0) // --help
      return app.exit(e);
    app.exit(e);
    return kExitUsage;
  }

  for (const auto &fn : run) {
    if (int code = fn(); code != 0)
      return code;
  }
  return 0;
}
