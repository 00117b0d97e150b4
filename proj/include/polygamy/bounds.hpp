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

#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace polygamy {

/// Exponent beta in [0, 1] and decay ratio k in (0, 1].
class BoundParams {
 public:
  /// Throws DomainError outside 0 <= beta <= 1, 0 < k <= 1.
  BoundParams(double beta, double k);

  double beta() const noexcept { return beta_; }
  double k() const noexcept { return k_; }

 private:
  double beta_;
  double k_;
};

enum class ProfileSource { analytic, estimated };

/// Pairwise assisted entanglements E_j = E_a(rho_{A|B_j}), in bits.
struct EntanglementProfile {
  std::vector<double> values;
  ProfileSource source = ProfileSource::analytic;
  /// permutation[i] is the original index of values[i], when reordered.
  std::vector<std::size_t> permutation;

  /// Throws ValidationError for negative or non-finite entries.
  static EntanglementProfile make(std::vector<double> values,
                                  ProfileSource source = ProfileSource::analytic);

  /// Copy sorted descending (stable), recording the permutation.
  EntanglementProfile sorted_descending() const;
};

/// x^beta with 0^beta := 0 for every beta, including beta = 0.
double power_or_zero(double x, double beta);

/// LSB-first bits (j_0, ..., j_{n-1}). Throws RangeError when j >= 2^n.
std::vector<int> binary_vector(std::uint64_t j, unsigned n);

int hamming_weight(std::uint64_t j);

/// ((1+k)^beta - 1) / k^beta
double weight_factor(const BoundParams& p);

/// [1 + weight_factor x^beta] - (1+x)^beta for 0 <= x <= k; DomainError
/// otherwise.
double lemma1_residual(double x, const BoundParams& p);

/// E_{j+1} <= k E_j for every consecutive pair.
bool check_condition_thm1(const EntanglementProfile& profile, double k);

/// k E_i >= sum_{j > i} E_j for i = 0 .. N-2.
bool check_condition_thm2(const EntanglementProfile& profile, double k);

/// Smallest k satisfying the consecutive-ratio condition, or nullopt when it
/// would exceed 1. All-zero (or single-entry) profiles return 1.
std::optional<double> optimal_k_thm1(const EntanglementProfile& profile);

/// Smallest k satisfying the tail-sum condition, same conventions.
std::optional<double> optimal_k_thm2(const EntanglementProfile& profile);

/// sum_j beta^{w_H(j)} E_j^beta
double kim_bound(const EntanglementProfile& profile, double beta);

/// sum_j f^{w_H(j)} E_j^beta with f = weight_factor(p)
double thm1_bound(const EntanglementProfile& profile, const BoundParams& p);

/// sum_j f^j E_j^beta
double thm2_bound(const EntanglementProfile& profile, const BoundParams& p);

enum class Verdict { verified, inconclusive, not_applicable, violated };

std::string_view to_string(Verdict v);

struct EvaluateOptions {
  std::optional<double> k_override;
  bool sort_descending = true;
  double analytic_tolerance = 1e-9;
  /// Verdict tolerance on estimated profiles is estimated_tolerance +
  /// optimizer_gap.
  double estimated_tolerance = 1e-3;
  double optimizer_gap = 0.0;
};

struct BoundReport {
  double beta = 0.0;
  double lhs = 0.0;
  /// Empty when no k <= 1 satisfies the decay condition.
  std::optional<double> k_used;
  double lhs_pow = 0.0;
  double sum_pow = 0.0;
  double bound_kim = 0.0;
  double bound_thm1 = 0.0;
  std::optional<double> bound_thm2;
  bool cond_thm1 = false;
  bool cond_thm2 = false;
  /// Smallest bound among the bounds whose condition holds.
  std::optional<double> tightest;
  /// tightest - lhs_pow (negative on a failed check).
  std::optional<double> margin;
  Verdict verdict = Verdict::not_applicable;
  /// Profile the bounds were evaluated on (sorted unless disabled).
  EntanglementProfile profile;

  double gap_thm1() const { return bound_thm1 - lhs_pow; }
  double gap_kim() const { return bound_kim - lhs_pow; }
};

/// Evaluates every bound for `lhs` = E_a(rho_{A|B_0...B_{N-1}}) against the
/// profile. The verdict is `verified` if lhs^beta <= tightest + tol,
/// `not_applicable` without a feasible k, and otherwise `inconclusive` for
/// estimated profiles (their entries are lower bounds) or `violated` for
/// analytic ones. Throws DomainError for lhs < 0 or beta outside [0, 1].
BoundReport evaluate_bounds(double lhs, const EntanglementProfile& profile,
                            double beta, const EvaluateOptions& options = {});

}  // namespace polygamy
