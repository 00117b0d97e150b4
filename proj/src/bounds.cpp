// Copyright 2026 The polygamy-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "polygamy/bounds.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include "polygamy/errors.hpp"

namespace polygamy {

BoundParams::BoundParams(double beta, double k) : beta_(beta), k_(k) {
  if (!(beta >= 0.0 && beta <= 1.0)) {
    throw DomainError("beta " + std::to_string(beta) + " outside [0, 1]");
  }
  if (!(k > 0.0 && k <= 1.0)) {
    throw DomainError("k " + std::to_string(k) + " outside (0, 1]");
  }
}

EntanglementProfile EntanglementProfile::make(std::vector<double> values,
                                              ProfileSource source) {
  for (double v : values) {
    if (!std::isfinite(v) || v < 0.0) {
      throw ValidationError("profile entries must be finite and nonnegative");
    }
  }
  EntanglementProfile p;
  p.permutation.resize(values.size());
  std::iota(p.permutation.begin(), p.permutation.end(), std::size_t{0});
  p.values = std::move(values);
  p.source = source;
  return p;
}

EntanglementProfile EntanglementProfile::sorted_descending() const {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return values[a] > values[b];
  });
  EntanglementProfile out;
  out.source = source;
  for (std::size_t i : order) {
    out.values.push_back(values[i]);
    out.permutation.push_back(permutation.empty() ? i : permutation[i]);
  }
  return out;
}

double power_or_zero(double x, double beta) {
  return x == 0.0 ? 0.0 : std::pow(x, beta);
}

std::vector<int> binary_vector(std::uint64_t j, unsigned n) {
  if (n < 64 && j >= (std::uint64_t{1} << n)) {
    throw RangeError(std::to_string(j) + " does not fit in " +
                     std::to_string(n) + " bits");
  }
  std::vector<int> bits(n);
  for (unsigned i = 0; i < n; ++i) bits[i] = static_cast<int>((j >> i) & 1U);
  return bits;
}

int hamming_weight(std::uint64_t j) { return std::popcount(j); }

double weight_factor(const BoundParams& p) {
  return (std::pow(1.0 + p.k(), p.beta()) - 1.0) / std::pow(p.k(), p.beta());
}

double lemma1_residual(double x, const BoundParams& p) {
  if (!(x >= 0.0 && x <= p.k())) {
    throw DomainError("x " + std::to_string(x) + " outside [0, k]");
  }
  const double rhs = 1.0 + weight_factor(p) * std::pow(x, p.beta());
  return rhs - std::pow(1.0 + x, p.beta());
}

bool check_condition_thm1(const EntanglementProfile& profile, double k) {
  const auto& e = profile.values;
  for (std::size_t j = 0; j + 1 < e.size(); ++j) {
    if (e[j + 1] > k * e[j]) return false;
  }
  return true;
}

bool check_condition_thm2(const EntanglementProfile& profile, double k) {
  const auto& e = profile.values;
  double tail = 0.0;
  for (std::size_t i = e.size(); i-- > 1;) {
    tail += e[i];
    if (k * e[i - 1] < tail) return false;
  }
  return true;
}

namespace {

// Max of numerator/denominator under the zero conventions shared by both
// optimal-k searches: 0/0 imposes nothing, x/0 with x > 0 is infeasible.
std::optional<double> max_feasible_ratio(
    const std::vector<std::pair<double, double>>& ratios) {
  double worst = 0.0;
  bool any = false;
  for (const auto& [num, den] : ratios) {
    if (num == 0.0) continue;
    if (den == 0.0) return std::nullopt;
    worst = std::max(worst, num / den);
    any = true;
  }
  if (!any || worst == 0.0) return 1.0;
  if (worst > 1.0) return std::nullopt;
  return worst;
}

}  // namespace

// The rounded quotient can sit an ulp below the true ratio; step up to the
// first double that passes the condition check.
template <typename Check>
std::optional<double> settle(std::optional<double> k, Check&& check) {
  while (k && !check(*k)) {
    k = std::nextafter(*k, 2.0);
    if (*k > 1.0) return std::nullopt;
  }
  return k;
}

std::optional<double> optimal_k_thm1(const EntanglementProfile& profile) {
  const auto& e = profile.values;
  std::vector<std::pair<double, double>> ratios;
  for (std::size_t j = 0; j + 1 < e.size(); ++j) ratios.emplace_back(e[j + 1], e[j]);
  return settle(max_feasible_ratio(ratios), [&](double k) {
    return check_condition_thm1(profile, k);
  });
}

std::optional<double> optimal_k_thm2(const EntanglementProfile& profile) {
  const auto& e = profile.values;
  std::vector<std::pair<double, double>> ratios;
  double tail = 0.0;
  for (std::size_t i = e.size(); i-- > 1;) {
    tail += e[i];
    ratios.emplace_back(tail, e[i - 1]);
  }
  return settle(max_feasible_ratio(ratios), [&](double k) {
    return check_condition_thm2(profile, k);
  });
}

double kim_bound(const EntanglementProfile& profile, double beta) {
  double s = 0.0;
  for (std::size_t j = 0; j < profile.values.size(); ++j) {
    s += std::pow(beta, hamming_weight(j)) *
         power_or_zero(profile.values[j], beta);
  }
  return s;
}

double thm1_bound(const EntanglementProfile& profile, const BoundParams& p) {
  const double f = weight_factor(p);
  double s = 0.0;
  for (std::size_t j = 0; j < profile.values.size(); ++j) {
    s += std::pow(f, hamming_weight(j)) *
         power_or_zero(profile.values[j], p.beta());
  }
  return s;
}

double thm2_bound(const EntanglementProfile& profile, const BoundParams& p) {
  const double f = weight_factor(p);
  double s = 0.0;
  double weight = 1.0;
  for (double e : profile.values) {
    s += weight * power_or_zero(e, p.beta());
    weight *= f;
  }
  return s;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::verified: return "verified";
    case Verdict::inconclusive: return "inconclusive";
    case Verdict::not_applicable: return "not_applicable";
    case Verdict::violated: return "violated";
  }
  return "unknown";
}

BoundReport evaluate_bounds(double lhs, const EntanglementProfile& profile,
                            double beta, const EvaluateOptions& options) {
  if (!(lhs >= 0.0) || !std::isfinite(lhs)) {
    throw DomainError("lhs must be finite and nonnegative");
  }
  if (!(beta >= 0.0 && beta <= 1.0)) {
    throw DomainError("beta " + std::to_string(beta) + " outside [0, 1]");
  }

  BoundReport rep;
  rep.beta = beta;
  rep.lhs = lhs;
  rep.profile = options.sort_descending ? profile.sorted_descending() : profile;
  const EntanglementProfile& prof = rep.profile;

  rep.lhs_pow = power_or_zero(lhs, beta);
  rep.sum_pow = power_or_zero(
      std::accumulate(prof.values.begin(), prof.values.end(), 0.0), beta);
  rep.bound_kim = kim_bound(prof, beta);

  rep.k_used = options.k_override ? options.k_override : optimal_k_thm1(prof);
  // Without a feasible k the bounds are still reported, at k = 1.
  const BoundParams params(beta, rep.k_used.value_or(1.0));
  rep.bound_thm1 = thm1_bound(prof, params);
  rep.bound_thm2 = thm2_bound(prof, params);
  if (!rep.k_used) {
    rep.verdict = Verdict::not_applicable;
    return rep;
  }
  rep.cond_thm1 = check_condition_thm1(prof, *rep.k_used);
  rep.cond_thm2 = check_condition_thm2(prof, *rep.k_used);
  if (rep.cond_thm1) rep.tightest = rep.bound_thm1;
  if (rep.cond_thm2) {
    rep.tightest = std::min(rep.tightest.value_or(*rep.bound_thm2), *rep.bound_thm2);
  }
  if (!rep.tightest) {
    rep.verdict = Verdict::not_applicable;
    return rep;
  }
  rep.margin = *rep.tightest - rep.lhs_pow;
  const bool estimated = prof.source == ProfileSource::estimated;
  const double tol = estimated
                         ? options.estimated_tolerance + options.optimizer_gap
                         : options.analytic_tolerance;
  if (*rep.margin >= -tol) {
    rep.verdict = Verdict::verified;
  } else {
    rep.verdict = estimated ? Verdict::inconclusive : Verdict::violated;
  }
  return rep;
}

}  // namespace polygamy
