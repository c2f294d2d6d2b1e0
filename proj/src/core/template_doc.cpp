#include "core/template_doc.hpp"

#include "core/error.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace heurbench {

namespace {

constexpr std::string_view kSectionNames[] = {
    "Identifier",          "Name",     "Description", "Examples", "Benefits",
    "Problems",            "Application context",     "Related heuristics",
    "Checklist",
};

std::string_view example_label(TemplateExample::Kind kind) {
  return kind == TemplateExample::Kind::Compliance ? "Compliance" : "Non-compliance";
}

} // namespace

ValidationReport validate_template(const HeuristicTemplate &t, const HeuristicCatalog &catalog) {
  ValidationReport report;
  const std::string subject = t.heuristic.canonical();
  if (!catalog.find(t.heuristic))
    report.add(subject, "template subject not in catalog");
  else if (catalog.find(t.heuristic)->status == HeuristicStatus::Discarded)
    report.add(subject, "discarded heuristics are not described");
  if (t.name.empty())
    report.add(subject, "name requires text");
  if (t.description.empty())
    report.add(subject, "description requires text");
  if (t.examples.empty())
    report.add(subject, "examples require >=1 entry");
  for (const auto &example : t.examples)
    if (example.text.empty())
      report.add(subject, "example text must be nonempty");
  if (t.benefits.empty())
    report.add(subject, "benefits require text");
  if (t.problems.empty())
    report.add(subject, "problems require text");
  if (t.application_context.empty())
    report.add(subject, "application context requires text");
  for (const auto &related : t.related_heuristics)
    if (!catalog.find(related))
      report.add(subject, "unresolved related heuristic " + related.canonical());
  if (t.checklist.empty())
    report.add(subject, "checklist requires >=1 step");
  for (const auto &step : t.checklist)
    if (step.empty())
      report.add(subject, "checklist steps must be nonempty");
  return report;
}

std::vector<std::string> lint_template(const HeuristicTemplate &t) {
  std::vector<std::string> notes;
  bool compliance = std::any_of(t.examples.begin(), t.examples.end(), [](const TemplateExample &e) {
    return e.kind == TemplateExample::Kind::Compliance;
  });
  bool non_compliance = std::any_of(t.examples.begin(), t.examples.end(), [](const TemplateExample &e) {
    return e.kind == TemplateExample::Kind::NonCompliance;
  });
  if (!compliance)
    notes.push_back("no compliance example given");
  if (!non_compliance)
    notes.push_back("no non-compliance example given");
  return notes;
}

std::string render_template(const HeuristicTemplate &t, const HeuristicCatalog &catalog) {
  ValidationReport report = validate_template(t, catalog);
  if (!report.ok())
    fail(Errc::InvalidTemplate, "template for " + t.heuristic.canonical() +
                                    " is invalid:\n" + report.to_text());

  std::ostringstream out;
  out << "Identifier: " << t.heuristic.canonical() << "\n\n";
  out << "Name: " << t.name << "\n\n";
  out << "Description: " << t.description << "\n\n";
  out << "Examples:\n";
  for (const auto &example : t.examples)
    out << "- " << example_label(example.kind) << ": " << example.text << "\n";
  out << "\n";
  out << "Benefits: " << t.benefits << "\n\n";
  out << "Problems: " << t.problems << "\n\n";
  out << "Application context: " << t.application_context << "\n\n";
  out << "Related heuristics: ";
  if (t.related_heuristics.empty()) {
    out << "(none)";
  } else {
    for (std::size_t i = 0; i < t.related_heuristics.size(); ++i)
      out << (i ? ", " : "") << t.related_heuristics[i].canonical();
  }
  out << "\n\n";
  out << "Checklist:\n";
  for (std::size_t i = 0; i < t.checklist.size(); ++i)
    out << i + 1 << ". " << t.checklist[i] << "\n";
  return out.str();
}

namespace {

std::vector<std::string> split_lines(const std::string &text) {
  std::vector<std::string> lines;
  std::string current;
  for (char c : text) {
    if (c == '\n') {
      lines.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  if (!current.empty())
    lines.push_back(current);
  return lines;
}

std::string trim(std::string_view text) {
  std::size_t begin = 0, end = text.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(text[begin])))
    ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1])))
    --end;
  return std::string(text.substr(begin, end - begin));
}

} // namespace

HeuristicTemplate parse_template(const std::string &document) {
  auto lines = split_lines(document);

  // Collect raw section bodies in document order; headers must follow the
  // standard section order.
  std::vector<std::string> bodies(std::size(kSectionNames));
  std::size_t section = std::size(kSectionNames); // none yet
  auto header_index = [](const std::string &line) -> std::size_t {
    for (std::size_t i = 0; i < std::size(kSectionNames); ++i) {
      const auto name = kSectionNames[i];
      if (line.compare(0, name.size(), name) == 0 && line.size() > name.size() &&
          line[name.size()] == ':')
        return i;
    }
    return std::size(kSectionNames);
  };

  std::size_t expected = 0;
  for (const auto &line : lines) {
    std::size_t idx = header_index(line);
    if (idx != std::size(kSectionNames)) {
      if (idx != expected)
        fail(Errc::InvalidTemplate, "section '" + std::string(kSectionNames[idx]) +
                                        "' out of order");
      section = idx;
      ++expected;
      bodies[idx] = trim(line.substr(std::string(kSectionNames[idx]).size() + 1));
      continue;
    }
    if (section == std::size(kSectionNames)) {
      if (!trim(line).empty())
        fail(Errc::InvalidTemplate, "text before the Identifier section");
      continue;
    }
    if (!bodies[section].empty())
      bodies[section] += "\n";
    bodies[section] += line;
  }
  if (expected != std::size(kSectionNames))
    fail(Errc::InvalidTemplate, "missing section '" + std::string(kSectionNames[expected]) + "'");

  for (auto &body : bodies) {
    while (!body.empty() && (body.back() == '\n' || body.back() == ' '))
      body.pop_back();
  }

  HeuristicTemplate t;
  t.heuristic = HeuristicId::parse(bodies[0]);
  t.name = bodies[1];
  t.description = bodies[2];
  for (const auto &line : split_lines(bodies[3] + "\n")) {
    std::string item = trim(line);
    if (item.empty())
      continue;
    if (item.rfind("- ", 0) != 0)
      fail(Errc::InvalidTemplate, "example entries start with '- ': " + item);
    item = item.substr(2);
    TemplateExample example;
    if (item.rfind("Compliance: ", 0) == 0) {
      example.kind = TemplateExample::Kind::Compliance;
      example.text = item.substr(12);
    } else if (item.rfind("Non-compliance: ", 0) == 0) {
      example.kind = TemplateExample::Kind::NonCompliance;
      example.text = item.substr(16);
    } else {
      fail(Errc::InvalidTemplate, "example entries are labeled Compliance or Non-compliance");
    }
    t.examples.push_back(std::move(example));
  }
  t.benefits = bodies[4];
  t.problems = bodies[5];
  t.application_context = bodies[6];
  if (bodies[7] != "(none)" && !bodies[7].empty()) {
    std::stringstream refs(bodies[7]);
    std::string token;
    while (std::getline(refs, token, ','))
      t.related_heuristics.push_back(HeuristicId::parse(trim(token)));
  }
  for (const auto &line : split_lines(bodies[8] + "\n")) {
    std::string item = trim(line);
    if (item.empty())
      continue;
    std::size_t dot = item.find(". ");
    if (dot == std::string::npos ||
        item.find_first_not_of("0123456789") != dot)
      fail(Errc::InvalidTemplate, "checklist steps are numbered 'n. text': " + item);
    t.checklist.push_back(item.substr(dot + 2));
  }
  return t;
}

} // namespace heurbench
