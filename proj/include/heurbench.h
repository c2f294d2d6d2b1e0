/*
 * heurbench — C API for the usability-heuristic development workbench.
 *
 * The workbench drives an eight-stage process for building domain-specific
 * usability heuristics: domain profiling, heuristic search, specificity
 * scoring, normalization, prioritization, formal description, experimental
 * validation and refinement. All state lives in an opaque project handle
 * backed by a JSON project file; every entry point returns an hb_status and
 * reports detail through hb_last_error().
 *
 * Strings returned through char** out-parameters are heap-allocated; release
 * them with hb_string_free(). The API is synchronous and handles must not be
 * shared across threads without external synchronization.
 */

#ifndef HEURBENCH_H
#define HEURBENCH_H

#ifdef __cplusplus
extern "C" {
#endif

typedef struct hb_project hb_project;
typedef struct hb_lock hb_lock;

/* Values double as CLI exit codes. */
typedef enum hb_status {
  HB_OK = 0,
  HB_ERR_VALIDATION = 1, /* rejected input, broken invariant, missing prerequisite */
  HB_ERR_USAGE = 2,      /* malformed arguments */
  HB_ERR_IO = 3          /* file system, schema or version trouble */
} hb_status;

const char *hb_version(void);

/* Thread-local message describing the most recent failure. */
const char *hb_last_error(void);

void hb_string_free(char *text);

/* ---- project lifecycle ---- */

hb_project *hb_project_new(const char *domain_name);
hb_status hb_project_load(const char *path, hb_project **out);
hb_status hb_project_save(hb_project *project, const char *path);
void hb_project_free(hb_project *project);

/* Advisory exclusive lock guarding load/modify/save sequences. */
hb_status hb_lock_acquire(const char *path, hb_lock **out);
void hb_lock_release(hb_lock *lock);

/* ---- stage 1: domain profile ---- */

/* kind: "UC", "LD", "PD" or "UP"; specificity: 0..4. */
hb_status hb_dimension_add(hb_project *project, const char *kind, const char *label,
                           int specificity);
hb_status hb_keyword_add(hb_project *project, const char *keyword);

/* ---- stage 2: heuristic search ---- */

hb_status hb_heuristics_import_csv(hb_project *project, const char *csv_path, char **summary_out);
hb_status hb_heuristic_list(const hb_project *project, char **text_out);

/* ---- stages 3-5: scoring, normalization, prioritization ---- */

hb_status hb_isi_set(hb_project *project, const char *heuristic_id, int isi);

/* conflict_kind: "duplication" or "overlap"; members: comma-separated ids. */
hb_status hb_conflict_declare(hb_project *project, const char *conflict_kind, const char *members,
                              const char *note, int *conflict_id_out);

/* action: "keep", "merge", "group" or "split".
 * kept_id:    kept heuristic (keep only; NULL otherwise).
 * inputs:     comma-separated ids being discarded / combined / split.
 * new_specs:  newline-separated "name|statement|isi" entries for created
 *             heuristics (merge/group: one; split: two or more; keep: NULL).
 */
hb_status hb_normalize_apply(hb_project *project, int conflict_id, const char *action,
                             const char *kept_id, const char *inputs, const char *new_specs,
                             const char *rationale, char **summary_out);
hb_status hb_normalize_status(const hb_project *project, char **text_out);

hb_status hb_gsi_set(hb_project *project, const char *heuristic_id, const char *kind,
                     const char *label, int score);
hb_status hb_matrix_build(hb_project *project, char **table_out);
hb_status hb_matrix_show(const hb_project *project, char **table_out);

/* threshold: decimal ("1.5") or fraction ("3/2"), within [0, 4]. */
hb_status hb_select(hb_project *project, const char *threshold, char **summary_out);

/* ---- stage 6: formal descriptions ---- */

/* template_json fields: heuristic, name, description, examples (kind/text),
 * benefits, problems, application_context, related_heuristics, checklist. */
hb_status hb_template_set_json(hb_project *project, const char *template_json);
hb_status hb_template_validate(const hb_project *project, const char *heuristic_id,
                               char **report_out);
hb_status hb_template_render(const hb_project *project, const char *heuristic_id, char **doc_out);
/* Re-ingests a document produced by hb_template_render. */
hb_status hb_template_import(hb_project *project, const char *document);

/* ---- stages 7-8: validation and refinement ---- */

/* controls: comma-separated tokens, or NULL/"" for the default N1..N10. */
hb_status hb_eval_import_csv(hb_project *project, const char *case_study, const char *csv_path,
                             const char *controls, char **summary_out);
hb_status hb_indicators(hb_project *project, const char *case_study, char **report_out);
hb_status hb_advise(hb_project *project, const char *case_study, char **advice_out);
hb_status hb_loopback(hb_project *project, int target_stage, const char *reason, int force,
                      char **summary_out);

/* exit_early nonzero is only meaningful for stage 2. */
hb_status hb_stage_advance(hb_project *project, int stage, int exit_early, char **summary_out);

hb_status hb_export_chart(const hb_project *project, char **csv_out);
hb_status hb_status_text(const hb_project *project, char **text_out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* HEURBENCH_H */
