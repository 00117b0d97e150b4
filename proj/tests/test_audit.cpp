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

#include <doctest.h>

#include <cmath>
#include <sstream>

#include "polygamy/audit.hpp"
#include "polygamy/csv.hpp"
#include "polygamy/errors.hpp"
#include "polygamy/rng.hpp"

using namespace polygamy;

namespace {

AssistOptions quick_optimizer() {
  AssistOptions o;
  o.restarts = 8;
  o.iterations = 200;
  return o;
}

std::string audit_csv(const AuditConfig& config) {
  std::ostringstream os;
  write_audit_csv(os, random_audit(config).records);
  return os.str();
}

}  // namespace

TEST_CASE("W state case") {
  const BoundReport r = wstate_case(0.5);
  CHECK(r.verdict == Verdict::verified);
  CHECK(*r.k_used == 1.0);
  CHECK(std::abs(r.lhs_pow - 0.958278) <= 1e-6);
  CHECK(std::abs(r.bound_thm1 - 1.154701) <= 1e-6);
  CHECK(std::abs(r.bound_kim - 1.224745) <= 1e-6);
  CHECK(std::abs(r.gap_thm1() - 0.19642) <= 5e-4);
  CHECK(std::abs(r.gap_kim() - 0.26647) <= 5e-4);
  // mpmath at 30 digits.
  CHECK(std::abs(r.gap_thm1() - 0.196423003395524) <= 1e-12);
  CHECK(std::abs(r.gap_kim() - 0.266467336407861) <= 1e-12);

  const BoundReport one = wstate_case(1.0);
  CHECK(std::abs(one.bound_thm1 - 4.0 / 3.0) <= 1e-12);
  CHECK(std::abs(one.bound_kim - 4.0 / 3.0) <= 1e-12);
  CHECK(std::abs(one.gap_thm1() - 0.415037499278844) <= 1e-12);

  CHECK(std::abs(kWStateLhs - (std::log2(3.0) - 2.0 / 3.0)) <= 1e-15);
}

TEST_CASE("beta sweep") {
  const auto rows = wstate_sweep(linear_grid(0.0, 1.0, 101));
  REQUIRE(rows.size() == 101);
  CHECK(rows.front().beta == 0.0);
  CHECK(rows.front().lhs_pow == 1.0);
  CHECK(rows.front().bound_thm1 == 1.0);
  CHECK(rows.front().bound_kim == 1.0);
  CHECK(rows.back().beta == 1.0);
  CHECK(std::abs(rows.back().bound_thm1 - 4.0 / 3.0) <= 1e-12);
  CHECK(std::abs(rows.back().bound_kim - 4.0 / 3.0) <= 1e-12);
  for (const auto& row : rows) {
    CHECK(row.lhs_pow <= row.bound_thm1 + 1e-12);
    CHECK(row.bound_thm1 <= row.bound_kim + 1e-12);
    CHECK(*row.k_used == 1.0);
  }

  CHECK_THROWS_AS(wstate_sweep({}), DomainError);
  CHECK_THROWS_AS(wstate_sweep({0.5, 0.4}), DomainError);
  CHECK_THROWS_AS(wstate_sweep({0.5, 1.2}), DomainError);
  CHECK_THROWS_AS(linear_grid(0.0, 1.0, 0), DomainError);
  CHECK(linear_grid(0.2, 0.2, 1) == std::vector<double>{0.2});

  const auto p = EntanglementProfile::make({0.5, 1.0});
  EvaluateOptions o;
  o.sort_descending = false;
  for (const auto& row : beta_sweep(1.0, p, {0.5}, o)) CHECK_FALSE(row.k_used.has_value());
}

TEST_CASE("lemma grid audit") {
  const double serial = lemma_grid_audit(50, Execution::serial);
  CHECK(serial >= -1e-12);
  CHECK(serial <= 1e-12);  // the beta = 1 slice is identically zero
  CHECK(lemma_grid_audit(50, Execution::parallel) == serial);
  CHECK_THROWS_AS(lemma_grid_audit(1), DomainError);
}

TEST_CASE("audit of the W state") {
  AuditConfig config;
  config.optimizer = quick_optimizer();
  const AuditRecord rec = audit_state(w_state(3), config, 7);
  CHECK(std::abs(rec.lhs - kWStateLhs) <= 1e-12);
  REQUIRE(rec.profile.values.size() == 2);
  for (double e : rec.profile.values) CHECK(std::abs(e - kWStatePairEoa) <= 1e-3);
  CHECK(rec.profile.source == ProfileSource::estimated);
  REQUIRE(rec.reports.size() == 3);
  for (const auto& r : rec.reports) CHECK(r.verdict == Verdict::verified);
}

TEST_CASE("audit of a product state has zero lhs") {
  AuditConfig config;
  config.optimizer = quick_optimizer();
  const PureState psi = basis_state(SystemLayout::qubits(3), std::vector<std::size_t>{0, 1, 0});
  const AuditRecord rec = audit_state(psi, config, 1);
  CHECK(std::abs(rec.lhs) <= 1e-12);
  for (const auto& r : rec.reports) CHECK(r.verdict == Verdict::verified);
}

TEST_CASE("random audit") {
  SUBCASE("no trials") {
    AuditConfig config;
    const AuditResult res = random_audit(config);
    CHECK(res.records.empty());
    CHECK(res.summary.trials == 0);
    CHECK(res.summary.verified == 0);
    CHECK_FALSE(res.summary.max_chain_residual.has_value());
    CHECK(res.summary.per_beta.size() == 3);
  }
  SUBCASE("small run verifies and is deterministic across execution modes") {
    AuditConfig config;
    config.trials = 6;
    config.optimizer = quick_optimizer();
    config.execution = Execution::serial;
    const AuditResult serial = random_audit(config);
    CHECK(serial.summary.trials == 6);
    CHECK(serial.summary.verified == 6);
    CHECK(serial.summary.violated == 0);
    CHECK(*serial.summary.max_chain_residual <= 1e-12);
    for (std::size_t i = 0; i < serial.records.size(); ++i) {
      CHECK(serial.records[i].trial == i);
      CHECK(serial.records[i].seed == Rng(42).derive_seed(i));
    }
    const std::string a = audit_csv(config);
    config.execution = Execution::parallel;
    CHECK(audit_csv(config) == a);
    CHECK(audit_csv(config) == a);
    config.master_seed = 43;
    CHECK(audit_csv(config) != a);
  }
  SUBCASE("qutrit environment") {
    AuditConfig config;
    config.layout = SystemLayout({2, 2, 3});
    config.trials = 2;
    config.optimizer = quick_optimizer();
    const AuditResult res = random_audit(config);
    CHECK(res.summary.violated == 0);
    CHECK(res.summary.verified == 2);
  }
}

TEST_CASE("summarize takes the worst verdict per trial") {
  AuditRecord rec;
  rec.layout = SystemLayout::qubits(3);
  BoundReport ok;
  ok.beta = 0.3;
  ok.verdict = Verdict::verified;
  BoundReport bad = ok;
  bad.beta = 0.5;
  bad.verdict = Verdict::inconclusive;
  rec.reports = {ok, bad};
  const AuditSummary s = summarize({rec}, {0.3, 0.5});
  CHECK(s.trials == 1);
  CHECK(s.verified == 0);
  CHECK(s.inconclusive == 1);
  CHECK(s.per_beta[0].verified == 1);
  CHECK(s.per_beta[1].inconclusive == 1);
}

TEST_CASE("tangle check") {
  TangleAuditConfig config;
  config.optimizer = quick_optimizer();

  const TangleRecord w = tangle_check(w_state(3), config, 3);
  CHECK(std::abs(w.tangle - 8.0 / 9.0) <= 1e-12);
  CHECK(w.tangle_ab + w.tangle_ac >= 8.0 / 9.0 - 1e-3);
  CHECK(w.verdict == Verdict::verified);

  const PureState bell0 = product(bell_state(), basis_state(SystemLayout::qubits(1), std::vector<std::size_t>{0}));
  const TangleRecord b = tangle_check(bell0, config, 3);
  CHECK(std::abs(b.tangle - 1.0) <= 1e-12);
  CHECK(std::abs(b.tangle_ab - 1.0) <= 1e-6);
  CHECK(std::abs(b.tangle_ac) <= 1e-9);
  CHECK(b.verdict == Verdict::verified);

  const TangleRecord p = tangle_check(basis_state(SystemLayout::qubits(3), std::vector<std::size_t>{1, 0, 1}), config, 3);
  CHECK(std::abs(p.tangle) <= 1e-12);
  CHECK(p.verdict == Verdict::verified);

  CHECK_THROWS_AS(tangle_check(haar_random_pure(SystemLayout({2, 2, 3}), 1), config, 3),
                  LayoutError);
  CHECK_THROWS_AS(tangle_check(haar_random_pure(SystemLayout::qubits(4), 1), config, 3),
                  LayoutError);
}

TEST_CASE("tangle audit") {
  TangleAuditConfig config;
  config.trials = 5;
  config.optimizer = quick_optimizer();
  config.execution = Execution::serial;
  const TangleAuditResult serial = tangle_audit(config);
  CHECK(serial.summary.verified == 5);
  config.execution = Execution::parallel;
  const TangleAuditResult parallel = tangle_audit(config);
  std::ostringstream a, b;
  write_tangle_csv(a, serial.records);
  write_tangle_csv(b, parallel.records);
  CHECK(a.str() == b.str());
}

TEST_CASE("csv formatting") {
  CHECK(format_number(0.0) == "0");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(1.0) == "1");
  CHECK(format_number(0.5) == "0.5");
  CHECK(format_number(1.0 / 3.0) == "0.333333333333");
  CHECK(format_number(std::optional<double>{}).empty());

  std::ostringstream os;
  write_sweep_csv(os, wstate_sweep({0.0, 1.0}));
  CHECK(os.str() ==
        "beta,lhs_pow,bound_thm1,bound_kim,bound_thm2,k_used\n"
        "0,1,1,1,1,1\n"
        "1,0.918295834054,1.33333333333,1.33333333333,1.33333333333,1\n");
}
