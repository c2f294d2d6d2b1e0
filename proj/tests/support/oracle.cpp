#include "support/oracle.hpp"

#include <cassert>
#include <cmath>
#include <numeric>
#include <vector>

namespace oracle {

using heurbench::Classification;
using heurbench::EvaluationDataset;
using heurbench::ProblemRecord;

Frac Frac::make(long long n, long long d) {
  assert(d != 0);
  if (d < 0) {
    n = -n;
    d = -d;
  }
  long long g = std::gcd(n < 0 ? -n : n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  return Frac{n, d};
}

Frac Frac::plus(const Frac &other) const {
  return make(num * other.den + other.num * den, den * other.den);
}

Frac Frac::times(long long k) const { return make(num * k, den); }

Frac Frac::over(const Frac &other) const {
  assert(other.num != 0);
  return make(num * other.den, den * other.num);
}

bool Frac::same(const Frac &other) const { return num == other.num && den == other.den; }

double Frac::real() const { return double(num) / double(den); }

namespace {

// Population variance of an integer count vector, as an exact fraction:
// sum((n*x_i - sum)^2) / n^3.
Frac population_variance(const std::vector<long long> &counts) {
  long long n = static_cast<long long>(counts.size());
  assert(n > 0);
  long long sum = 0;
  for (long long c : counts)
    sum += c;
  long long sq = 0;
  for (long long c : counts) {
    long long d = n * c - sum;
    sq += d * d;
  }
  return Frac::make(sq, n * n * n);
}

} // namespace

Rates brute_force(const EvaluationDataset &dataset, const std::map<std::string, Frac> &fsi) {
  Rates r;

  long long sev_domain_only = 0, sev_control_only = 0, sev_common = 0;
  for (const ProblemRecord &p : dataset.problems) {
    if (p.classification == Classification::Common) {
      r.n_common++;
      sev_common += p.severity.value;
    } else if (p.classification == Classification::DomainOnly) {
      r.n_domain_only++;
      sev_domain_only += p.severity.value;
    } else {
      r.n_control_only++;
      sev_control_only += p.severity.value;
    }
  }
  r.n_domain_all = r.n_domain_only + r.n_common;
  r.n_control_all = r.n_control_only + r.n_common;

  if (r.n_control_only > 0)
    r.unique_rate = Frac::make(r.n_domain_only, r.n_control_only);
  if (r.n_control_all > 0)
    r.unique_rate_approx = Frac::make(r.n_domain_all, r.n_control_all);

  if (r.n_domain_only > 0 && r.n_control_only > 0 && sev_control_only > 0)
    r.severity_rate = Frac::make(sev_domain_only, r.n_domain_only)
                          .over(Frac::make(sev_control_only, r.n_control_only));
  long long sev_domain_all = sev_domain_only + sev_common;
  long long sev_control_all = sev_control_only + sev_common;
  if (r.n_domain_all > 0 && r.n_control_all > 0 && sev_control_all > 0)
    r.severity_rate_approx = Frac::make(sev_domain_all, r.n_domain_all)
                                 .over(Frac::make(sev_control_all, r.n_control_all));

  // Dispersion: per-heuristic counts over the combined sets, zeros included.
  if (r.n_domain_all > 0 && r.n_control_all > 0 && !dataset.domain_heuristics.empty() &&
      !dataset.control_heuristics.empty()) {
    std::vector<long long> domain_counts(dataset.domain_heuristics.size(), 0);
    std::vector<long long> control_counts(dataset.control_heuristics.size(), 0);
    for (const ProblemRecord &p : dataset.problems) {
      if (p.classification != Classification::ControlOnly) {
        for (std::size_t i = 0; i < dataset.domain_heuristics.size(); ++i)
          if (dataset.domain_heuristics[i] == *p.domain_attribution)
            domain_counts[i]++;
      }
      if (p.classification != Classification::DomainOnly) {
        for (std::size_t i = 0; i < dataset.control_heuristics.size(); ++i)
          if (dataset.control_heuristics[i] == *p.control_attribution)
            control_counts[i]++;
      }
    }
    Frac var_d = population_variance(domain_counts);
    Frac var_c = population_variance(control_counts);
    r.dispersion_domain_var = var_d;
    r.dispersion_control_var = var_c;
    if (var_d.num != 0)
      r.dispersion_rate = std::sqrt(var_c.real()) / std::sqrt(var_d.real());
  }

  // Specificity: FSI-weighted counts on the domain side, recorded per-problem
  // scores on the control side.
  if (!fsi.empty() && r.n_domain_all > 0 && r.n_control_all > 0) {
    bool usable = true;
    Frac weighted{0, 1};
    for (const ProblemRecord &p : dataset.problems) {
      if (p.classification == Classification::ControlOnly)
        continue;
      auto it = fsi.find(p.domain_attribution->canonical());
      if (it == fsi.end()) {
        usable = false;
        break;
      }
      weighted = weighted.plus(it->second);
    }
    long long spec_sum = 0;
    for (const ProblemRecord &p : dataset.problems) {
      if (p.classification == Classification::DomainOnly)
        continue;
      if (!p.control_specificity) {
        usable = false;
        break;
      }
      spec_sum += p.control_specificity->value;
    }
    if (usable) {
      r.epsilon_domain = weighted.over(Frac{r.n_domain_all, 1});
      r.epsilon_control = Frac::make(spec_sum, r.n_control_all);
      if (spec_sum > 0)
        r.specificity_rate = r.epsilon_domain->over(*r.epsilon_control);
    }
  }

  return r;
}

} // namespace oracle
