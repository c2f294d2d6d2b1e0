#include "core/indicators.hpp"

#include "core/error.hpp"

#include <cmath>
#include <iomanip>
#include <map>
#include <sstream>

namespace heurbench {

Rate Rate::unavailable(std::string reason) {
  Rate rate;
  rate.reason = std::move(reason);
  return rate;
}

Rate Rate::of(Rational domain, Rational control) {
  Rate rate;
  rate.available = true;
  rate.value = domain / control;
  rate.domain_component = domain;
  rate.control_component = control;
  return rate;
}

DispersionRate DispersionRate::unavailable(std::string reason) {
  DispersionRate rate;
  rate.reason = std::move(reason);
  return rate;
}

double DispersionRate::domain_stddev() const { return std::sqrt(domain_variance.to_double()); }
double DispersionRate::control_stddev() const { return std::sqrt(control_variance.to_double()); }
double DispersionRate::value() const { return std::sqrt(value_squared.to_double()); }

PartitionCounts partition_counts(const ProblemPartition &partition) {
  PartitionCounts counts;
  counts.common = static_cast<std::int64_t>(partition.common.size());
  counts.domain_only = static_cast<std::int64_t>(partition.domain_only.size());
  counts.control_only = static_cast<std::int64_t>(partition.control_only.size());
  counts.domain_all = static_cast<std::int64_t>(partition.domain_all.size());
  counts.control_all = static_cast<std::int64_t>(partition.control_all.size());
  counts.total = counts.common + counts.domain_only + counts.control_only;
  return counts;
}

Rate rate_unique(const ProblemPartition &partition) {
  if (partition.control_only.empty())
    return Rate::unavailable("no-control-only-problems");
  return Rate::of(Rational(static_cast<std::int64_t>(partition.domain_only.size())),
                  Rational(static_cast<std::int64_t>(partition.control_only.size())));
}

Rate rate_unique_approx(const ProblemPartition &partition) {
  if (partition.control_all.empty())
    return Rate::unavailable("no-control-side-problems");
  return Rate::of(Rational(static_cast<std::int64_t>(partition.domain_all.size())),
                  Rational(static_cast<std::int64_t>(partition.control_all.size())));
}

namespace {

Rational mean_severity(const EvaluationDataset &dataset, const std::vector<std::size_t> &members) {
  std::int64_t sum = 0;
  for (std::size_t index : members)
    sum += dataset.problems[index].severity.value;
  return Rational(sum, static_cast<std::int64_t>(members.size()));
}

Rate severity_quotient(const EvaluationDataset &dataset, const std::vector<std::size_t> &domain,
                       const std::vector<std::size_t> &control, std::string_view side_suffix) {
  if (domain.empty())
    return Rate::unavailable("no-domain-" + std::string(side_suffix));
  if (control.empty())
    return Rate::unavailable("no-control-" + std::string(side_suffix));
  Rational domain_mean = mean_severity(dataset, domain);
  Rational control_mean = mean_severity(dataset, control);
  if (control_mean.is_zero()) {
    Rate rate = Rate::unavailable("zero-control-severity");
    rate.domain_component = domain_mean;
    rate.control_component = control_mean;
    return rate;
  }
  return Rate::of(domain_mean, control_mean);
}

Rational count_variance(const std::vector<std::int64_t> &counts) {
  Rational mean(0);
  for (std::int64_t c : counts)
    mean += Rational(c);
  mean /= Rational(static_cast<std::int64_t>(counts.size()));
  Rational variance(0);
  for (std::int64_t c : counts) {
    Rational deviation = Rational(c) - mean;
    variance += deviation * deviation;
  }
  return variance / Rational(static_cast<std::int64_t>(counts.size()));
}

std::vector<std::int64_t> attribution_counts(const EvaluationDataset &dataset,
                                             const std::vector<std::size_t> &members,
                                             bool domain_side) {
  std::vector<std::int64_t> counts(
      domain_side ? dataset.domain_heuristics.size() : dataset.control_heuristics.size(), 0);
  for (std::size_t index : members) {
    const ProblemRecord &p = dataset.problems[index];
    if (domain_side) {
      for (std::size_t i = 0; i < dataset.domain_heuristics.size(); ++i)
        if (p.domain_attribution && dataset.domain_heuristics[i] == *p.domain_attribution)
          counts[i]++;
    } else {
      for (std::size_t i = 0; i < dataset.control_heuristics.size(); ++i)
        if (p.control_attribution && dataset.control_heuristics[i] == *p.control_attribution)
          counts[i]++;
    }
  }
  return counts;
}

} // namespace

DispersionRate rate_dispersion(const EvaluationDataset &dataset, const ProblemPartition &partition) {
  if (partition.domain_all.empty())
    return DispersionRate::unavailable("no-domain-side-problems");
  if (partition.control_all.empty())
    return DispersionRate::unavailable("no-control-side-problems");
  if (dataset.domain_heuristics.empty() || dataset.control_heuristics.empty())
    return DispersionRate::unavailable("no-heuristic-lists");

  DispersionRate rate;
  rate.domain_variance = count_variance(attribution_counts(dataset, partition.domain_all, true));
  rate.control_variance = count_variance(attribution_counts(dataset, partition.control_all, false));
  if (rate.domain_variance.is_zero()) {
    rate.reason = "zero-domain-dispersion";
    return rate;
  }
  rate.available = true;
  rate.value_squared = rate.control_variance / rate.domain_variance;
  return rate;
}

Rate rate_severity(const EvaluationDataset &dataset, const ProblemPartition &partition) {
  return severity_quotient(dataset, partition.domain_only, partition.control_only, "only-problems");
}

Rate rate_severity_approx(const EvaluationDataset &dataset, const ProblemPartition &partition) {
  return severity_quotient(dataset, partition.domain_all, partition.control_all, "side-problems");
}

Rate rate_specificity(const EvaluationDataset &dataset, const ProblemPartition &partition,
                      const SpecificityMatrix &matrix) {
  if (partition.domain_all.empty())
    return Rate::unavailable("no-domain-side-problems");
  if (partition.control_all.empty())
    return Rate::unavailable("no-control-side-problems");

  // Domain side: problems weighted by the FSI of the heuristic they hit.
  Rational weighted(0);
  for (std::size_t index : partition.domain_all) {
    const ProblemRecord &p = dataset.problems[index];
    const MatrixRow *row = p.domain_attribution ? matrix.find(*p.domain_attribution) : nullptr;
    if (!row)
      fail(Errc::MissingFsi, "no FSI for heuristic " +
                                 (p.domain_attribution ? p.domain_attribution->canonical()
                                                       : std::string("<unattributed>")));
    weighted += row->fsi;
  }
  Rational epsilon_domain =
      weighted / Rational(static_cast<std::int64_t>(partition.domain_all.size()));

  // Control side: plain average of the recorded per-problem scores.
  std::int64_t sum = 0;
  for (std::size_t index : partition.control_all) {
    const ProblemRecord &p = dataset.problems[index];
    if (!p.control_specificity)
      fail(Errc::MissingSpecificity, "problem " + p.id + " lacks a control specificity score");
    sum += p.control_specificity->value;
  }
  Rational epsilon_control(sum, static_cast<std::int64_t>(partition.control_all.size()));

  if (epsilon_control.is_zero()) {
    Rate rate = Rate::unavailable("zero-control-specificity");
    rate.domain_component = epsilon_domain;
    rate.control_component = epsilon_control;
    return rate;
  }
  return Rate::of(epsilon_domain, epsilon_control);
}

IndicatorReport build_report(const EvaluationDataset &dataset, const SpecificityMatrix *matrix) {
  ProblemPartition partition = partition_problems(dataset);

  IndicatorReport report;
  report.counts = partition_counts(partition);
  report.unique_rate = rate_unique(partition);
  report.unique_rate_approx = rate_unique_approx(partition);
  report.dispersion_rate = rate_dispersion(dataset, partition);
  report.severity_rate = rate_severity(dataset, partition);
  report.severity_rate_approx = rate_severity_approx(dataset, partition);

  if (!matrix) {
    report.specificity_rate = Rate::unavailable("no-specificity-matrix");
  } else {
    try {
      report.specificity_rate = rate_specificity(dataset, partition, *matrix);
    } catch (const Error &e) {
      report.specificity_rate = Rate::unavailable(
          e.code() == Errc::MissingFsi ? "missing-fsi" : "missing-control-specificity");
    }
  }

  auto domain_counts = attribution_counts(dataset, partition.domain_all, true);
  for (std::size_t i = 0; i < dataset.domain_heuristics.size(); ++i)
    report.domain_problem_counts.push_back(
        {dataset.domain_heuristics[i].canonical(), domain_counts[i]});
  auto control_counts = attribution_counts(dataset, partition.control_all, false);
  for (std::size_t i = 0; i < dataset.control_heuristics.size(); ++i)
    report.control_problem_counts.push_back({dataset.control_heuristics[i], control_counts[i]});
  return report;
}

namespace {

void print_rate(std::ostringstream &out, std::string_view key, std::string_view label,
                const Rate &rate) {
  out << "  " << std::left << std::setw(12) << key << std::setw(28) << label;
  if (rate.available) {
    out << "= " << rate.value.to_decimal_string() << "  (" << rate.value.to_fraction_string();
    if (rate.domain_component && rate.control_component)
      out << "; domain " << rate.domain_component->to_decimal_string() << ", control "
          << rate.control_component->to_decimal_string();
    out << ")";
  } else {
    out << "unavailable: " << rate.reason;
  }
  out << "\n";
}

} // namespace

std::string report_to_text(const IndicatorReport &report, const std::string &case_name) {
  std::ostringstream out;
  out << "case: " << case_name << "\n";
  const auto &c = report.counts;
  out << "  problems: total=" << c.total << " common=" << c.common
      << " domain_only=" << c.domain_only << " control_only=" << c.control_only
      << " domain_side=" << c.domain_all << " control_side=" << c.control_all << "\n";
  print_rate(out, "phi", "unique problem rate", report.unique_rate);
  print_rate(out, "phi_star", "unique rate (approx)", report.unique_rate_approx);

  out << "  " << std::left << std::setw(12) << "delta" << std::setw(28) << "problem dispersion rate";
  const auto &d = report.dispersion_rate;
  if (d.available) {
    out << "= " << std::fixed << std::setprecision(4) << d.value() << "  (domain "
        << d.domain_stddev() << ", control " << d.control_stddev() << ")"
        << std::defaultfloat << std::setprecision(6);
  } else {
    out << "unavailable: " << d.reason;
  }
  out << "\n";

  print_rate(out, "lambda", "severity rate", report.severity_rate);
  print_rate(out, "lambda_star", "severity rate (approx)", report.severity_rate_approx);
  print_rate(out, "epsilon", "specificity rate", report.specificity_rate);

  out << "  problem counts per domain heuristic:";
  for (const auto &entry : report.domain_problem_counts)
    out << " " << entry.heuristic << "=" << entry.count;
  out << "\n  problem counts per control heuristic:";
  for (const auto &entry : report.control_problem_counts)
    out << " " << entry.heuristic << "=" << entry.count;
  out << "\n";
  return out.str();
}

} // namespace heurbench
