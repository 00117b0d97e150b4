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
#include <vector>

#include "polygamy/bounds.hpp"
#include "polygamy/execution.hpp"
#include "polygamy/measures.hpp"
#include "polygamy/states.hpp"

namespace polygamy {

/// Analytic W-state values: S(rho_A) and E_a(rho_AB) = E_a(rho_AC).
inline constexpr double kWStateLhs = 0.918295834054489514787;  // log2(3) - 2/3
inline constexpr double kWStatePairEoa = 2.0 / 3.0;

/// Bound report for the three-qubit W state at k = 1, from analytic values.
BoundReport wstate_case(double beta);

struct SweepRow {
  double beta;
  double lhs_pow;
  double bound_thm1;
  double bound_kim;
  std::optional<double> bound_thm2;
  std::optional<double> k_used;
};

/// One row per beta. The grid must be nonempty, strictly increasing and
/// within [0, 1] (DomainError otherwise).
std::vector<SweepRow> beta_sweep(double lhs, const EntanglementProfile& profile,
                                 const std::vector<double>& grid,
                                 const EvaluateOptions& options = {});

/// Sweep on the analytic W-state fixture (k = 1).
std::vector<SweepRow> wstate_sweep(const std::vector<double>& grid);

/// `steps` evenly spaced values from start to stop inclusive.
std::vector<double> linear_grid(double start, double stop, int steps);

/// Minimum of lemma1_residual over k_i = i/res (i = 1..res),
/// beta_j = j/(res-1) and x_l = k l/(res-1). DomainError for res < 2.
double lemma_grid_audit(int resolution, Execution execution = Execution::parallel);

struct AuditConfig {
  SystemLayout layout = SystemLayout::qubits(3);
  int trials = 0;
  std::vector<double> betas{0.3, 0.5, 0.8};
  AssistOptions optimizer{};
  std::uint64_t master_seed = 42;
  /// Restart multiplier applied once when a check on estimated data fails.
  int escalation_factor = 4;
  EvaluateOptions evaluate{};
  Execution execution = Execution::parallel;
};

struct AuditRecord {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  SystemLayout layout;
  /// Exact entropy of entanglement of the pure global state across A|rest.
  double lhs = 0.0;
  /// Estimated E_a(rho_{A B_j}), in subsystem order.
  EntanglementProfile profile;
  std::vector<BoundReport> reports;  // one per beta
  bool escalated = false;
  double runtime_ms = 0.0;
};

struct BetaTally {
  double beta = 0.0;
  std::size_t verified = 0;
  std::size_t inconclusive = 0;
  std::size_t not_applicable = 0;
  std::size_t violated = 0;
};

struct AuditSummary {
  std::size_t trials = 0;
  /// Per-trial verdicts: a trial counts as verified only if every beta
  /// verified; otherwise it takes the worst verdict observed.
  std::size_t verified = 0;
  std::size_t inconclusive = 0;
  std::size_t not_applicable = 0;
  std::size_t violated = 0;
  std::vector<BetaTally> per_beta;
  /// max over trials and betas with cond_thm1 of sum_pow - bound_thm1.
  std::optional<double> max_chain_residual;
  std::size_t escalations = 0;
};

/// Audits one pure state on A|B_0...B_{N-1}: exact lhs, estimated pairwise
/// EOA, and a bound report per beta. One escalation at escalation_factor x
/// restarts is spent if any beta comes out inconclusive.
AuditRecord audit_state(const PureState& psi, const AuditConfig& config,
                        std::uint64_t seed);

struct AuditResult {
  std::vector<AuditRecord> records;
  AuditSummary summary;
};

/// Trials are independent: trial i samples haar_random_pure with seed
/// Rng(master_seed).derive_seed(i). Records are kept in trial order.
AuditResult random_audit(const AuditConfig& config);

AuditSummary summarize(const std::vector<AuditRecord>& records,
                       const std::vector<double>& betas);

struct TangleRecord {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  double tangle = 0.0;      // tau(A|BC)
  double tangle_ab = 0.0;   // estimated tau_a(rho_AB)
  double tangle_ac = 0.0;   // estimated tau_a(rho_AC)
  Verdict verdict = Verdict::inconclusive;
  bool escalated = false;
};

struct TangleAuditConfig {
  int trials = 0;
  std::uint64_t master_seed = 42;
  AssistOptions optimizer{};
  double tolerance = 1e-3;
  int escalation_factor = 4;
  Execution execution = Execution::parallel;
};

/// tau(A|BC) <= tau_a(AB) + tau_a(AC) + tolerance on a 3-qubit pure state.
/// Throws LayoutError for any other layout.
TangleRecord tangle_check(const PureState& psi, const TangleAuditConfig& config,
                          std::uint64_t seed);

struct TangleAuditResult {
  std::vector<TangleRecord> records;
  AuditSummary summary;
};

TangleAuditResult tangle_audit(const TangleAuditConfig& config);

}  // namespace polygamy
