// Copyright 2026 The wpir-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "wpir/analytics.h"
#include "wpir/criteria.h"
#include "wpir/optimizer.h"
#include "wpir/protocol.h"

namespace {

void BM_SolveOptimal(benchmark::State& state) {
  const auto params = wpir::MakeParams(wpir::Setting::kMdsCoded, 5, 4,
                                       static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        wpir::SolveOptimal(params, wpir::Metric::kMil, 0.8));
  }
}
BENCHMARK(BM_SolveOptimal)->Arg(4)->Arg(8)->Arg(16);

void BM_TradeoffSweep(benchmark::State& state) {
  const auto params = wpir::MakeParams(wpir::Setting::kMdsCoded, 5, 4, 4);
  const double cap = wpir::LeakageCap(params, wpir::Metric::kMil);
  for (auto _ : state) {
    double acc = 0.0;
    for (int i = 0; i < 25; ++i) {
      acc += wpir::CompareWithTheorem(params, wpir::Metric::kMil,
                                      cap * i / 24.0)
                 .gap;
    }
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_TradeoffSweep);

void BM_GainTable(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(wpir::ComputeGainTable(0.7828));
  }
}
BENCHMARK(BM_GainTable);

void BM_ExactAuditClasses(benchmark::State& state) {
  const auto params = wpir::MakeParams(wpir::Setting::kReplicated, 2, 1,
                                       static_cast<int>(state.range(0)));
  std::vector<double> probs(params.n_files, 1.0 / params.n_files);
  const auto p = wpir::MakeDistribution(probs);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        wpir::ExactAudit(params, p, wpir::AuditMode::kQueryClasses));
  }
}
BENCHMARK(BM_ExactAuditClasses)->Arg(3)->Arg(8)->Arg(16);

void BM_ExactAuditFullEnumeration(benchmark::State& state) {
  const auto params = wpir::MakeParams(wpir::Setting::kReplicated, 2, 1, 2);
  const auto p = wpir::MakeDistribution({0.5, 0.5});
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        wpir::ExactAudit(params, p, wpir::AuditMode::kFullEnumeration));
  }
}
BENCHMARK(BM_ExactAuditFullEnumeration);

void BM_ProtocolRoundTrip(benchmark::State& state) {
  const auto params = wpir::MakeParams(wpir::Setting::kReplicated, 3, 1, 3);
  const auto library = wpir::BuildLibrary(params, 11);
  const auto p = wpir::MakeDistribution({0.0, 0.0, 1.0});
  uint64_t trial = 0;
  for (auto _ : state) {
    wpir::SplitMix64 rng(11 ^ trial++);
    benchmark::DoNotOptimize(wpir::RunOne(library, params, p, 1, rng));
  }
}
BENCHMARK(BM_ProtocolRoundTrip);

void BM_RunTrials(benchmark::State& state) {
  const auto params = wpir::MakeParams(wpir::Setting::kReplicated, 2, 1, 2);
  const auto p = wpir::MakeDistribution({0.5, 0.5});
  for (auto _ : state) {
    benchmark::DoNotOptimize(wpir::RunTrials(params, p, 1000, 42, 1));
  }
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_RunTrials);

}  // namespace

BENCHMARK_MAIN();
