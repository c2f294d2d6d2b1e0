#pragma once

#include "core/model.hpp"
#include "core/rational.hpp"
#include "core/specificity.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace heurbench {

/// One quality indicator expressed as an exact quotient. Every rate is
/// oriented so that a value above 1 favors the domain heuristics; when the
/// data cannot support the quotient the rate is unavailable and carries a
/// machine-readable reason instead.
struct Rate {
  bool available = false;
  std::string reason;                        // set iff unavailable
  Rational value;                            // domain_component / control_component
  std::optional<Rational> domain_component;  // numerator-side quantity
  std::optional<Rational> control_component; // denominator-side quantity

  static Rate unavailable(std::string reason);
  static Rate of(Rational domain, Rational control); // control must be nonzero
};

/// The dispersion rate is the one indicator whose value is a square root, so
/// the exact state is kept in squared form and the root is taken only for
/// display.
struct DispersionRate {
  bool available = false;
  std::string reason;
  Rational domain_variance;  // population variance of the domain count vector
  Rational control_variance; // population variance of the control count vector
  Rational value_squared;    // control_variance / domain_variance

  double domain_stddev() const;
  double control_stddev() const;
  double value() const; // sqrt(value_squared)

  static DispersionRate unavailable(std::string reason);
};

struct HeuristicCount {
  std::string heuristic; // canonical domain id or control token
  std::int64_t count = 0;
};

struct PartitionCounts {
  std::int64_t common = 0;
  std::int64_t domain_only = 0;
  std::int64_t control_only = 0;
  std::int64_t domain_all = 0;  // domain_only + common
  std::int64_t control_all = 0; // control_only + common
  std::int64_t total = 0;
};

struct IndicatorReport {
  PartitionCounts counts;
  Rate unique_rate;            // |P_D| / |P_C|
  Rate unique_rate_approx;     // |P*_D| / |P*_C|
  DispersionRate dispersion_rate;
  Rate severity_rate;          // mean severity P_D / mean severity P_C
  Rate severity_rate_approx;   // over the combined sets
  Rate specificity_rate;       // FSI-weighted domain average / control average
  std::vector<HeuristicCount> domain_problem_counts;  // over P*_D, zeros kept
  std::vector<HeuristicCount> control_problem_counts; // over P*_C, zeros kept
};

PartitionCounts partition_counts(const ProblemPartition &partition);

Rate rate_unique(const ProblemPartition &partition);
Rate rate_unique_approx(const ProblemPartition &partition);
DispersionRate rate_dispersion(const EvaluationDataset &dataset, const ProblemPartition &partition);
Rate rate_severity(const EvaluationDataset &dataset, const ProblemPartition &partition);
Rate rate_severity_approx(const EvaluationDataset &dataset, const ProblemPartition &partition);

/// Throws MissingFsi / MissingSpecificity when the required inputs are absent
/// (build_report converts those to unavailability instead).
Rate rate_specificity(const EvaluationDataset &dataset, const ProblemPartition &partition,
                      const SpecificityMatrix &matrix);

/// Assembles all six rates plus counts. Never fails on partial data: each
/// rate that cannot be computed is reported unavailable with its reason.
/// `matrix` may be null when no specificity matrix exists yet.
IndicatorReport build_report(const EvaluationDataset &dataset, const SpecificityMatrix *matrix);

std::string report_to_text(const IndicatorReport &report, const std::string &case_name);

} // namespace heurbench
