#include "core/specificity.hpp"

#include "core/error.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

namespace heurbench {

Rational compute_gsi(const GsiTable &table, const DomainProfile &profile) {
  auto items = profile.items_of(table.kind);
  if (items.empty())
    fail(Errc::IncompleteRow, "profile has no " + std::string(dimension_code(table.kind)) + " items");

  std::string gaps;
  std::int64_t sum = 0;
  for (const DimensionItem *item : items) {
    auto it = table.scores.find(item->label);
    if (it == table.scores.end()) {
      gaps += gaps.empty() ? "" : ", ";
      gaps += item->label;
      continue;
    }
    sum += it->second.value;
  }
  if (!gaps.empty())
    fail(Errc::IncompleteRow, table.heuristic.canonical() + " " +
                                  std::string(dimension_code(table.kind)) +
                                  " row missing scores for: " + gaps);
  if (table.scores.size() != items.size()) {
    for (const auto &[label, score] : table.scores) {
      bool known = std::any_of(items.begin(), items.end(),
                               [&](const DimensionItem *i) { return i->label == label; });
      if (!known)
        fail(Errc::IncompleteRow, table.heuristic.canonical() + " " +
                                      std::string(dimension_code(table.kind)) +
                                      " row scores unknown item '" + label + "'");
    }
  }
  return Rational(sum, static_cast<std::int64_t>(items.size()));
}

Rational compute_fsi(SpecificityScore isi, const Rational &gsi_uc, const Rational &gsi_pd,
                     const Rational &gsi_ld, const Rational &gsi_up) {
  for (const Rational *gsi : {&gsi_uc, &gsi_pd, &gsi_ld, &gsi_up}) {
    if (*gsi < Rational(0) || *gsi > Rational(4))
      fail(Errc::OutOfRangeGsi, "dimension mean " + gsi->to_fraction_string() + " outside [0, 4]");
  }
  Rational sum = gsi_uc + gsi_pd + gsi_ld + gsi_up;
  return Rational(4) * Rational(isi.value) * sum / Rational(64);
}

const MatrixRow *SpecificityMatrix::find(const HeuristicId &id) const {
  for (const auto &row : rows)
    if (row.heuristic == id)
      return &row;
  return nullptr;
}

std::string SpecificityMatrix::to_text() const {
  std::ostringstream out;
  out << std::left << std::setw(12) << "heuristic" << std::right << std::setw(5) << "ISI"
      << std::setw(9) << "GSI_UC" << std::setw(9) << "GSI_PD" << std::setw(9) << "GSI_LD"
      << std::setw(9) << "GSI_UP" << std::setw(9) << "FSI" << "\n";
  for (const auto &row : rows) {
    out << std::left << std::setw(12) << row.heuristic.canonical() << std::right << std::setw(5)
        << row.isi.value << std::setw(9) << row.gsi_uc.to_decimal_string() << std::setw(9)
        << row.gsi_pd.to_decimal_string() << std::setw(9) << row.gsi_ld.to_decimal_string()
        << std::setw(9) << row.gsi_up.to_decimal_string() << std::setw(9)
        << row.fsi.to_decimal_string() << "\n";
  }
  return out.str();
}

SpecificityMatrix build_matrix(const HeuristicCatalog &catalog,
                               const std::vector<GsiTable> &tables,
                               const DomainProfile &profile) {
  auto table_for = [&](const HeuristicId &id, DimensionKind kind) -> const GsiTable * {
    for (const auto &t : tables)
      if (t.heuristic == id && t.kind == kind)
        return &t;
    return nullptr;
  };

  std::string gaps;
  SpecificityMatrix matrix;
  for (const auto &h : catalog.heuristics) {
    if (h.status != HeuristicStatus::Normalized && h.status != HeuristicStatus::Selected)
      continue;
    std::map<DimensionKind, Rational> means;
    for (auto kind : kDimensionKinds) {
      const GsiTable *table = table_for(h.id, kind);
      if (!table) {
        gaps += gaps.empty() ? "" : ", ";
        gaps += h.id.canonical() + "/" + std::string(dimension_code(kind));
        continue;
      }
      means[kind] = compute_gsi(*table, profile);
    }
    if (means.size() != kDimensionKinds.size())
      continue;
    MatrixRow row;
    row.heuristic = h.id;
    row.isi = h.isi;
    row.gsi_uc = means[DimensionKind::UsageContext];
    row.gsi_pd = means[DimensionKind::PhysicalDevice];
    row.gsi_ld = means[DimensionKind::LogicalDevice];
    row.gsi_up = means[DimensionKind::UserProfile];
    row.fsi = compute_fsi(row.isi, row.gsi_uc, row.gsi_pd, row.gsi_ld, row.gsi_up);
    matrix.rows.push_back(std::move(row));
  }
  if (!gaps.empty())
    fail(Errc::MissingGsiRow, "missing dimension scores for: " + gaps);

  std::sort(matrix.rows.begin(), matrix.rows.end(), [](const MatrixRow &a, const MatrixRow &b) {
    if (a.fsi != b.fsi)
      return a.fsi > b.fsi;
    if (a.isi != b.isi)
      return a.isi.value > b.isi.value;
    return a.heuristic < b.heuristic;
  });
  return matrix;
}

Selection select_heuristics(const SpecificityMatrix &matrix, const Rational &threshold,
                            HeuristicCatalog catalog) {
  Selection result;
  result.catalog = std::move(catalog);
  for (const auto &row : matrix.rows) {
    Heuristic *h = result.catalog.find(row.heuristic);
    if (!h)
      fail(Errc::UnknownId, "matrix row " + row.heuristic.canonical() + " not in catalog");
    if (row.fsi >= threshold) {
      result.selected.push_back(row.heuristic);
      h->status = HeuristicStatus::Selected;
    } else if (h->status == HeuristicStatus::Selected) {
      h->status = HeuristicStatus::Normalized;
    }
  }
  return result;
}

} // namespace heurbench
