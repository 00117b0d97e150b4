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

// Serial reference loops against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include "polygamy/audit.hpp"
#include "polygamy/measures.hpp"
#include "polygamy/states.hpp"

namespace {

using polygamy::Execution;

Execution mode(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::serial : Execution::parallel;
}

void BM_LemmaGrid(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(polygamy::lemma_grid_audit(100, mode(state)));
  }
}
BENCHMARK(BM_LemmaGrid)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_AssistedMeasure(benchmark::State& state) {
  const auto rho = polygamy::random_mixed(polygamy::SystemLayout({2, 3}), 3, 11);
  polygamy::AssistOptions o;
  o.execution = mode(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        polygamy::assisted_measure(rho, polygamy::PureMeasure::entropy, o).value);
  }
}
BENCHMARK(BM_AssistedMeasure)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_RandomAudit(benchmark::State& state) {
  polygamy::AuditConfig config;
  config.trials = 8;
  config.execution = mode(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(polygamy::random_audit(config).summary.verified);
  }
}
BENCHMARK(BM_RandomAudit)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
