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

#include "polygamy/audit.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <string>

#include "polygamy/errors.hpp"
#include "polygamy/rng.hpp"

namespace polygamy {

BoundReport wstate_case(double beta) {
  EvaluateOptions opts;
  opts.k_override = 1.0;
  return evaluate_bounds(
      kWStateLhs, EntanglementProfile::make({kWStatePairEoa, kWStatePairEoa}),
      beta, opts);
}

std::vector<SweepRow> beta_sweep(double lhs, const EntanglementProfile& profile,
                                 const std::vector<double>& grid,
                                 const EvaluateOptions& options) {
  if (grid.empty()) throw DomainError("beta grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] >= 0.0 && grid[i] <= 1.0)) {
      throw DomainError("beta grid value outside [0, 1]");
    }
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw DomainError("beta grid must be strictly increasing");
    }
  }
  std::vector<SweepRow> rows;
  rows.reserve(grid.size());
  for (double beta : grid) {
    const BoundReport r = evaluate_bounds(lhs, profile, beta, options);
    rows.push_back({beta, r.lhs_pow, r.bound_thm1, r.bound_kim, r.bound_thm2,
                    r.k_used});
  }
  return rows;
}

std::vector<SweepRow> wstate_sweep(const std::vector<double>& grid) {
  EvaluateOptions opts;
  opts.k_override = 1.0;
  return beta_sweep(kWStateLhs,
                    EntanglementProfile::make({kWStatePairEoa, kWStatePairEoa}),
                    grid, opts);
}

std::vector<double> linear_grid(double start, double stop, int steps) {
  if (steps < 1) throw DomainError("grid needs at least one step");
  if (steps == 1) return {start};
  std::vector<double> grid(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    grid[static_cast<std::size_t>(i)] =
        i == steps - 1 ? stop : start + (stop - start) * i / (steps - 1);
  }
  return grid;
}

double lemma_grid_audit(int resolution, Execution execution) {
  if (resolution < 2) throw DomainError("grid resolution must be >= 2");
  const int res = resolution;
  double worst = 0.0;
#pragma omp parallel for reduction(min : worst) schedule(static) \
    if (execution == Execution::parallel)
  for (int i = 1; i <= res; ++i) {
    const double k = static_cast<double>(i) / res;
    for (int j = 0; j < res; ++j) {
      const BoundParams p(static_cast<double>(j) / (res - 1), k);
      for (int l = 0; l < res; ++l) {
        const double x = l == res - 1 ? k : k * l / (res - 1);
        worst = std::min(worst, lemma1_residual(x, p));
      }
    }
  }
  return worst;
}

namespace {

using Clock = std::chrono::steady_clock;

std::vector<double> estimate_profile(const PureState& psi,
                                     const AssistOptions& base,
                                     std::uint64_t seed, int restarts) {
  const Rng streams(seed);
  std::vector<double> values;
  for (std::size_t j = 1; j < psi.layout().size(); ++j) {
    const std::size_t keep[] = {0, j};
    AssistOptions opt = base;
    opt.restarts = restarts;
    opt.seed = streams.derive_seed(j);
    values.push_back(
        assisted_measure(psi.reduced(keep), PureMeasure::entropy, opt).value);
  }
  return values;
}

std::vector<BoundReport> evaluate_all(double lhs,
                                      const EntanglementProfile& profile,
                                      const AuditConfig& config) {
  std::vector<BoundReport> out;
  for (double beta : config.betas) {
    out.push_back(evaluate_bounds(lhs, profile, beta, config.evaluate));
  }
  return out;
}

bool any_inconclusive(const std::vector<BoundReport>& reports) {
  return std::any_of(reports.begin(), reports.end(), [](const BoundReport& r) {
    return r.verdict == Verdict::inconclusive;
  });
}

int severity(Verdict v) {
  switch (v) {
    case Verdict::verified: return 0;
    case Verdict::not_applicable: return 1;
    case Verdict::inconclusive: return 2;
    case Verdict::violated: return 3;
  }
  return 3;
}

void count(Verdict v, std::size_t& verified, std::size_t& inconclusive,
           std::size_t& not_applicable, std::size_t& violated) {
  switch (v) {
    case Verdict::verified: ++verified; break;
    case Verdict::inconclusive: ++inconclusive; break;
    case Verdict::not_applicable: ++not_applicable; break;
    case Verdict::violated: ++violated; break;
  }
}

// Runs body(i) for i in [0, n) and rethrows the first failure.
template <typename Body>
void for_each_trial(int n, Execution execution, Body&& body) {
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic) if (execution == Execution::parallel)
  for (int i = 0; i < n; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(polygamy_trial_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

AuditRecord audit_state(const PureState& psi, const AuditConfig& config,
                        std::uint64_t seed) {
  if (psi.layout().size() < 2) {
    throw LayoutError("audit needs at least one B subsystem");
  }
  const auto start = Clock::now();
  AuditRecord rec;
  rec.seed = seed;
  rec.layout = psi.layout();
  const std::size_t side_a[] = {0};
  rec.lhs = pure_entanglement(psi, side_a);

  rec.profile = EntanglementProfile::make(
      estimate_profile(psi, config.optimizer, seed, config.optimizer.restarts),
      ProfileSource::estimated);
  rec.reports = evaluate_all(rec.lhs, rec.profile, config);
  if (any_inconclusive(rec.reports) && config.escalation_factor > 1) {
    rec.escalated = true;
    rec.profile = EntanglementProfile::make(
        estimate_profile(psi, config.optimizer, seed,
                         config.optimizer.restarts * config.escalation_factor),
        ProfileSource::estimated);
    rec.reports = evaluate_all(rec.lhs, rec.profile, config);
  }
  rec.runtime_ms =
      std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  return rec;
}

AuditSummary summarize(const std::vector<AuditRecord>& records,
                       const std::vector<double>& betas) {
  AuditSummary s;
  s.trials = records.size();
  for (double b : betas) s.per_beta.push_back({.beta = b});
  for (const AuditRecord& rec : records) {
    Verdict worst = Verdict::verified;
    for (std::size_t i = 0; i < rec.reports.size(); ++i) {
      const BoundReport& r = rec.reports[i];
      if (severity(r.verdict) > severity(worst)) worst = r.verdict;
      BetaTally& t = s.per_beta[i];
      count(r.verdict, t.verified, t.inconclusive, t.not_applicable, t.violated);
      if (r.cond_thm1) {
        const double residual = r.sum_pow - r.bound_thm1;
        s.max_chain_residual = std::max(s.max_chain_residual.value_or(residual), residual);
      }
    }
    count(worst, s.verified, s.inconclusive, s.not_applicable, s.violated);
    if (rec.escalated) ++s.escalations;
  }
  return s;
}

AuditResult random_audit(const AuditConfig& config) {
  if (config.trials < 0) throw DomainError("trials must be >= 0");
  AuditConfig inner = config;
  inner.optimizer.execution = Execution::serial;
  const Rng master(config.master_seed);

  AuditResult result;
  result.records.resize(static_cast<std::size_t>(config.trials));
  for_each_trial(config.trials, config.execution, [&](std::size_t i) {
    const std::uint64_t seed = master.derive_seed(i);
    AuditRecord rec = audit_state(haar_random_pure(config.layout, seed), inner, seed);
    rec.trial = i;
    result.records[i] = std::move(rec);
  });
  result.summary = summarize(result.records, config.betas);
  return result;
}

namespace {

double tangle_of_pair(const PureState& psi, std::size_t b,
                      const AssistOptions& base, std::uint64_t seed,
                      int restarts) {
  const std::size_t keep[] = {0, b};
  AssistOptions opt = base;
  opt.restarts = restarts;
  opt.seed = seed;
  return assisted_measure(psi.reduced(keep), PureMeasure::tangle, opt).value;
}

}  // namespace

TangleRecord tangle_check(const PureState& psi, const TangleAuditConfig& config,
                          std::uint64_t seed) {
  if (psi.layout() != SystemLayout::qubits(3)) {
    throw LayoutError("tangle audit needs a 3-qubit state, got " +
                      psi.layout().describe());
  }
  const Rng streams(seed);
  TangleRecord rec;
  rec.seed = seed;
  const std::size_t side_a[] = {0};
  rec.tangle = tangle_pure(psi, side_a);

  auto run = [&](int restarts) {
    rec.tangle_ab = tangle_of_pair(psi, 1, config.optimizer,
                                   streams.derive_seed(1), restarts);
    rec.tangle_ac = tangle_of_pair(psi, 2, config.optimizer,
                                   streams.derive_seed(2), restarts);
    return rec.tangle <= rec.tangle_ab + rec.tangle_ac + config.tolerance;
  };
  bool ok = run(config.optimizer.restarts);
  if (!ok && config.escalation_factor > 1) {
    rec.escalated = true;
    ok = run(config.optimizer.restarts * config.escalation_factor);
  }
  rec.verdict = ok ? Verdict::verified : Verdict::inconclusive;
  return rec;
}

TangleAuditResult tangle_audit(const TangleAuditConfig& config) {
  if (config.trials < 0) throw DomainError("trials must be >= 0");
  TangleAuditConfig inner = config;
  inner.optimizer.execution = Execution::serial;
  const Rng master(config.master_seed);
  const SystemLayout layout = SystemLayout::qubits(3);

  TangleAuditResult result;
  result.records.resize(static_cast<std::size_t>(config.trials));
  for_each_trial(config.trials, config.execution, [&](std::size_t i) {
    const std::uint64_t seed = master.derive_seed(i);
    TangleRecord rec = tangle_check(haar_random_pure(layout, seed), inner, seed);
    rec.trial = i;
    result.records[i] = rec;
  });

  AuditSummary& s = result.summary;
  s.trials = result.records.size();
  for (const TangleRecord& r : result.records) {
    count(r.verdict, s.verified, s.inconclusive, s.not_applicable, s.violated);
    if (r.escalated) ++s.escalations;
    const double residual = r.tangle - (r.tangle_ab + r.tangle_ac);
    s.max_chain_residual = std::max(s.max_chain_residual.value_or(residual), residual);
  }
  return result;
}

}  // namespace polygamy
