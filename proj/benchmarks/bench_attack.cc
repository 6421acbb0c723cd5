// Copyright 2026 The GramAttack Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "gramattack/analysis.h"
#include "gramattack/attack.h"
#include "gramattack/perturb.h"
#include "gramattack/resources.h"
#include "toy_fixtures.h"

namespace gramattack {
namespace {

struct Fixture {
  LanguageResources res = LanguageResources::bundled();
  LinearClassifier oracle = fixtures::toy_sentiment_oracle();
  std::vector<TaskInstance> data = fixtures::toy_dataset(200, 7, res);
};

Fixture& fixture() {
  static Fixture f;
  return f;
}

void BM_OperationSets(benchmark::State& state) {
  Fixture& f = fixture();
  for (auto _ : state) {
    for (const TaskInstance& inst : f.data) {
      benchmark::DoNotOptimize(
          build_operation_sets(inst.mutable_sentence(), f.res.confusions, f.res.inflections));
    }
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(f.data.size()));
}
BENCHMARK(BM_OperationSets);

void BM_Attack(benchmark::State& state) {
  Fixture& f = fixture();
  AttackConfig cfg;
  cfg.algorithm = static_cast<Algorithm>(state.range(0));
  for (auto _ : state) {
    for (const TaskInstance& inst : f.data) {
      benchmark::DoNotOptimize(run_attack(inst, f.oracle, f.res, cfg));
    }
  }
  state.SetLabel(std::string(to_string(cfg.algorithm)));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(f.data.size()));
}
BENCHMARK(BM_Attack)->Arg(0)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_Campaign(benchmark::State& state) {
  Fixture& f = fixture();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        run_campaign(f.data, f.oracle, f.res, AttackConfig{}, static_cast<std::size_t>(state.range(0))));
  }
}
BENCHMARK(BM_Campaign)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_ProbabilisticTransform(benchmark::State& state) {
  Fixture& f = fixture();
  Rng rng(1);
  for (auto _ : state) {
    for (const TaskInstance& inst : f.data) {
      benchmark::DoNotOptimize(
          probabilistic_transform(inst.mutable_sentence(), f.res.distribution, f.res, 2, rng));
    }
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(f.data.size()));
}
BENCHMARK(BM_ProbabilisticTransform);

}  // namespace
}  // namespace gramattack

BENCHMARK_MAIN();
