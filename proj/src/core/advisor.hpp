#pragma once

#include "core/indicators.hpp"

#include <string>
#include <vector>

namespace heurbench {

enum class IndicatorKind { UniqueRate, DispersionRate, SpecificityRate, SeverityRate };

std::string_view indicator_code(IndicatorKind kind); // "phi" / "delta" / "epsilon" / "lambda"

struct TriggeredRule {
  IndicatorKind indicator = IndicatorKind::UniqueRate;
  bool approximate = false; // the starred rate stood in for the exact one
  double value = 0.0;
  std::string value_display; // 4-decimal rendering
  std::vector<std::string> hypotheses;
  std::vector<int> revisit_stages;
};

struct RefinementAdvice {
  enum class Verdict { NoRefinementSignaled, RefinementSuggested };

  std::vector<TriggeredRule> triggered; // fixed order: phi, delta, epsilon, lambda
  Verdict verdict = Verdict::NoRefinementSignaled;
  std::vector<std::string> notes; // e.g. approximate-substitution remarks
};

/// Applies the four refinement rules: an indicator triggers advice exactly
/// when it is available and strictly below 1. The approximate unique and
/// severity rates substitute for the exact ones only when those are
/// unavailable. Pure and deterministic.
RefinementAdvice advise(const IndicatorReport &report);

std::string advice_to_text(const RefinementAdvice &advice, const IndicatorReport &report);

} // namespace heurbench
