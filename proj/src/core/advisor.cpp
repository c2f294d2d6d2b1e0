#include "core/advisor.hpp"

#include <iomanip>
#include <sstream>

namespace heurbench {

std::string_view indicator_code(IndicatorKind kind) {
  switch (kind) {
  case IndicatorKind::UniqueRate:
    return "phi";
  case IndicatorKind::DispersionRate:
    return "delta";
  case IndicatorKind::SpecificityRate:
    return "epsilon";
  case IndicatorKind::SeverityRate:
    return "lambda";
  }
  return "";
}

namespace {

// Hypothesized causes per indicator, with the stages worth revisiting.
// Stage mapping: poor domain adjustment touches specificity scoring through
// description (3-5, plus 6 for evaluator comprehension); overlap is resolved
// in 4, over-specific selection in 5, hard-to-apply descriptions in 6;
// prioritization lives in 5; experiment design and evaluator-group selection
// live in 7.
const std::vector<std::string> &hypotheses_for(IndicatorKind kind) {
  static const std::vector<std::string> unique = {
      "domain heuristics not well adjusted to the domain",
      "application under evaluation has mainly general problems",
      "detailed heuristic explanations not understood by the evaluators",
  };
  static const std::vector<std::string> dispersion = {
      "overlapping heuristics",
      "too many problems",
      "overly specific heuristics",
      "lack of problems",
      "heuristics difficult for evaluators to apply",
  };
  static const std::vector<std::string> specificity = {
      "prioritization of the domain heuristics",
      "experiment design, e.g. selection of the evaluator groups",
  };
  static const std::vector<std::string> severity = {
      "experiment design, in particular selection of the evaluator groups",
  };
  switch (kind) {
  case IndicatorKind::UniqueRate:
    return unique;
  case IndicatorKind::DispersionRate:
    return dispersion;
  case IndicatorKind::SpecificityRate:
    return specificity;
  case IndicatorKind::SeverityRate:
    return severity;
  }
  return unique;
}

std::vector<int> stages_for(IndicatorKind kind) {
  switch (kind) {
  case IndicatorKind::UniqueRate:
    return {3, 4, 5, 6};
  case IndicatorKind::DispersionRate:
    return {4, 5, 6};
  case IndicatorKind::SpecificityRate:
    return {5, 7};
  case IndicatorKind::SeverityRate:
    return {7};
  }
  return {};
}

std::string four_places(double value) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(4) << value;
  return out.str();
}

void trigger(RefinementAdvice &advice, IndicatorKind kind, bool approximate, double value,
             std::string display) {
  TriggeredRule rule;
  rule.indicator = kind;
  rule.approximate = approximate;
  rule.value = value;
  rule.value_display = std::move(display);
  rule.hypotheses = hypotheses_for(kind);
  rule.revisit_stages = stages_for(kind);
  advice.triggered.push_back(std::move(rule));
}

void apply_exact_rule(RefinementAdvice &advice, IndicatorKind kind, const Rate &exact,
                      const Rate *approx) {
  const Rate *rate = nullptr;
  bool approximate = false;
  if (exact.available) {
    rate = &exact;
  } else if (approx && approx->available) {
    rate = approx;
    approximate = true;
    advice.notes.push_back(std::string(indicator_code(kind)) +
                           ": approximate rate substituted (exact rate " + exact.reason + ")");
  }
  if (rate && rate->value < Rational(1))
    trigger(advice, kind, approximate, rate->value.to_double(),
            rate->value.to_decimal_string() + (approximate ? " (approximate)" : ""));
}

} // namespace

RefinementAdvice advise(const IndicatorReport &report) {
  RefinementAdvice advice;

  apply_exact_rule(advice, IndicatorKind::UniqueRate, report.unique_rate,
                   &report.unique_rate_approx);

  const DispersionRate &dispersion = report.dispersion_rate;
  if (dispersion.available && dispersion.value_squared < Rational(1))
    trigger(advice, IndicatorKind::DispersionRate, false, dispersion.value(),
            four_places(dispersion.value()));

  if (report.specificity_rate.available && report.specificity_rate.value < Rational(1))
    trigger(advice, IndicatorKind::SpecificityRate, false,
            report.specificity_rate.value.to_double(),
            report.specificity_rate.value.to_decimal_string());

  apply_exact_rule(advice, IndicatorKind::SeverityRate, report.severity_rate,
                   &report.severity_rate_approx);

  advice.verdict = advice.triggered.empty() ? RefinementAdvice::Verdict::NoRefinementSignaled
                                            : RefinementAdvice::Verdict::RefinementSuggested;
  return advice;
}

std::string advice_to_text(const RefinementAdvice &advice, const IndicatorReport &report) {
  std::ostringstream out;
  const auto &c = report.counts;
  out << "counts: total=" << c.total << " common=" << c.common << " domain_only=" << c.domain_only
      << " control_only=" << c.control_only << " domain_side=" << c.domain_all
      << " control_side=" << c.control_all << "\n";
  if (advice.verdict == RefinementAdvice::Verdict::NoRefinementSignaled) {
    out << "verdict: no refinement signaled\n";
  } else {
    out << "verdict: refinement suggested\n";
    for (const auto &rule : advice.triggered) {
      out << "  " << indicator_code(rule.indicator) << " = " << rule.value_display
          << " < 1; revisit stages";
      for (int stage : rule.revisit_stages)
        out << " " << stage;
      out << "\n";
      for (const auto &hypothesis : rule.hypotheses)
        out << "    - " << hypothesis << "\n";
    }
  }
  for (const auto &note : advice.notes)
    out << "note: " << note << "\n";
  return out.str();
}

} // namespace heurbench
