// Copyright 2026 The normchain Authors.
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

#include <benchmark/benchmark.h>

#include "normchain/coe.h"
#include "normchain/mock_providers.h"
#include "normchain/synthetic.h"
#include "normchain/tasks.h"

namespace {

using normchain::Role;
using normchain::coe::Strategy;

normchain::coe::Experts OracleExperts() {
  namespace mock = normchain::mock;
  normchain::coe::Experts e;
  e.generators[Role::kActionGenContext] =
      std::make_shared<mock::OracleGenerator>(0.5);
  e.generators[Role::kActionGenContextConseq] =
      std::make_shared<mock::OracleGenerator>(0.8);
  e.generators[Role::kConseqGenContextAction] =
      std::make_shared<mock::OracleGenerator>(0.6);
  auto cls = std::make_shared<mock::OracleClassifier>();
  for (Role r : {Role::kActionClsContext, Role::kActionClsContextConseq,
                 Role::kConseqClsContextAction}) {
    e.classifiers[r] = cls;
  }
  return e;
}

void RunStrategy(benchmark::State& state, Strategy s) {
  const auto world = normchain::synthetic::MakeOracleWorldStories(500, 1);
  std::vector<normchain::coe::ChainInput> inputs;
  for (const auto& sample :
       normchain::BuildSamples(world, normchain::Task::kActionGen, "context")) {
    inputs.push_back(normchain::coe::ChainInputFromSample(sample, s));
  }
  const auto experts = OracleExperts();
  normchain::coe::ChainConfig cfg;
  cfg.strategy = s;
  cfg.decode.n = 10;
  cfg.decode.seed = 1;
  const auto workers = static_cast<size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        normchain::coe::RunBatch(inputs, cfg, experts, workers));
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<int64_t>(inputs.size()));
}

void BM_ActionRanking(benchmark::State& state) {
  RunStrategy(state, Strategy::kActionRanking);
}
BENCHMARK(BM_ActionRanking)->Arg(1)->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);

void BM_AbductiveRefinement(benchmark::State& state) {
  RunStrategy(state, Strategy::kAbductiveRefinement);
}
BENCHMARK(BM_AbductiveRefinement)->Arg(1)->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
