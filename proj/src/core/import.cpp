#include "core/import.hpp"

#include "core/error.hpp"

#include <charconv>
#include <set>

namespace heurbench {

namespace {

void check_header(const CsvTable &table, const std::vector<std::string> &expected) {
  for (const auto &name : expected)
    if (table.column(name) < 0)
      fail(Errc::MalformedRow, "header is missing column '" + name + "'");
  if (table.header.size() != expected.size())
    fail(Errc::MalformedRow, "header has unexpected extra columns");
}

[[noreturn]] void reject(std::size_t line, std::string_view column, std::string_view reason) {
  fail(Errc::MalformedRow, "line " + std::to_string(line) + ", column " + std::string(column) +
                               ": " + std::string(reason));
}

int parse_int_cell(std::string_view cell, std::size_t line, std::string_view column) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc() || ptr != cell.data() + cell.size())
    reject(line, column, "expected an integer, got '" + std::string(cell) + "'");
  return value;
}

int likert_cell(std::string_view cell, std::size_t line, std::string_view column) {
  int value = parse_int_cell(cell, line, column);
  if (value < 0 || value > 4)
    reject(line, column, "Likert value out of range 0..4: " + std::string(cell));
  return value;
}

} // namespace

std::vector<Heuristic> import_heuristics_csv(const CsvTable &table,
                                             const std::vector<Heuristic> &existing) {
  check_header(table, {"set_id", "index", "name", "statement", "isi"});
  const int c_set = table.column("set_id"), c_index = table.column("index"),
            c_name = table.column("name"), c_statement = table.column("statement"),
            c_isi = table.column("isi");

  std::set<HeuristicId> seen;
  for (const auto &h : existing)
    seen.insert(h.id);

  std::vector<Heuristic> imported;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto &row = table.rows[r];
    const std::size_t line = table.row_lines[r];

    Heuristic h;
    h.id.set_id = row[c_set];
    if (h.id.set_id.empty())
      reject(line, "set_id", "set id must be nonempty");
    if (h.id.set_id == kNewSetId)
      reject(line, "set_id", "set NEW is reserved for heuristics created during normalization");
    h.id.index = parse_int_cell(row[c_index], line, "index");
    if (h.id.index <= 0)
      reject(line, "index", "index must be positive");
    if (!seen.insert(h.id).second)
      fail(Errc::DuplicateId, "line " + std::to_string(line) + ": duplicate id " + h.id.canonical());
    h.name = row[c_name];
    if (h.name.empty())
      reject(line, "name", "name must be nonempty");
    h.statement = row[c_statement];
    if (h.statement.empty())
      reject(line, "statement", "statement must be nonempty");
    h.isi = SpecificityScore{likert_cell(row[c_isi], line, "isi")};
    h.origin = Origin::found();
    h.status = HeuristicStatus::Denormalized;
    imported.push_back(std::move(h));
  }
  return imported;
}

EvaluationDataset import_problems_csv(const CsvTable &table, std::string case_study,
                                      std::vector<HeuristicId> domain_heuristics,
                                      std::vector<std::string> control_heuristics,
                                      ImportSummary &summary) {
  check_header(table, {"id", "description", "classification", "domain_heuristic",
                       "control_heuristic", "severity", "control_specificity"});
  const int c_id = table.column("id"), c_desc = table.column("description"),
            c_class = table.column("classification"), c_domain = table.column("domain_heuristic"),
            c_control = table.column("control_heuristic"), c_sev = table.column("severity"),
            c_spec = table.column("control_specificity");

  EvaluationDataset dataset;
  dataset.case_study = std::move(case_study);
  dataset.domain_heuristics = std::move(domain_heuristics);
  dataset.control_heuristics = std::move(control_heuristics);

  std::set<std::string> seen;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto &row = table.rows[r];
    const std::size_t line = table.row_lines[r];

    ProblemRecord p;
    p.id = row[c_id];
    if (p.id.empty())
      reject(line, "id", "problem id must be nonempty");
    if (!seen.insert(p.id).second)
      fail(Errc::DuplicateId, "line " + std::to_string(line) + ": duplicate problem id " + p.id);
    p.description = row[c_desc];
    if (p.description.empty())
      reject(line, "description", "description must be nonempty");
    try {
      p.classification = parse_classification(row[c_class]);
    } catch (const Error &e) {
      reject(line, "classification", e.what());
    }

    const bool domain_side = p.classification != Classification::ControlOnly;
    const bool control_side = p.classification != Classification::DomainOnly;

    if (!row[c_domain].empty()) {
      if (!domain_side)
        reject(line, "domain_heuristic", "control-only problems carry no domain attribution");
      try {
        p.domain_attribution = HeuristicId::parse(row[c_domain]);
      } catch (const Error &e) {
        reject(line, "domain_heuristic", e.what());
      }
      bool known = false;
      for (const auto &id : dataset.domain_heuristics)
        known = known || id == *p.domain_attribution;
      if (!known)
        reject(line, "domain_heuristic",
               "'" + row[c_domain] + "' is not one of the selected domain heuristics");
    } else if (domain_side) {
      reject(line, "domain_heuristic", "classification requires a domain attribution");
    }

    if (!row[c_control].empty()) {
      if (!control_side)
        reject(line, "control_heuristic", "domain-only problems carry no control attribution");
      bool known = false;
      for (const auto &token : dataset.control_heuristics)
        known = known || token == row[c_control];
      if (!known)
        reject(line, "control_heuristic",
               "'" + row[c_control] + "' is not one of the control heuristics");
      p.control_attribution = row[c_control];
    } else if (control_side) {
      reject(line, "control_heuristic", "classification requires a control attribution");
    }

    p.severity = Severity{likert_cell(row[c_sev], line, "severity")};

    if (!row[c_spec].empty()) {
      if (!control_side)
        reject(line, "control_specificity", "specificity applies only to control-side problems");
      p.control_specificity = SpecificityScore{likert_cell(row[c_spec], line, "control_specificity")};
    } else if (control_side) {
      summary.warnings.push_back("line " + std::to_string(line) + ": problem " + p.id +
                                 " lacks a control specificity score; the specificity rate "
                                 "will be unavailable");
    }

    dataset.problems.push_back(std::move(p));
    summary.imported++;
  }
  return dataset;
}

} // namespace heurbench
