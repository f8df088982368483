// Copyright 2026 The syneval Authors. All Rights Reserved.
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

#include "syneval/adam.h"
#include "syneval/probe.h"
#include "syneval/rng.h"
#include "syneval/trainer.h"

namespace {

syneval::Matrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  syneval::Rng rng(seed);
  syneval::Matrix m(rows, cols);
  for (float& v : m.values()) v = static_cast<float>(rng.normal());
  return m;
}

// Args: batch rows, input dim. The probe uses the default MLP widths.
void BM_ProbeForward(benchmark::State& state) {
  const auto rows = static_cast<std::size_t>(state.range(0));
  const auto dim = static_cast<std::size_t>(state.range(1));
  const auto probe = syneval::Probe::init({dim, {512, 256}, 1, 1});
  const auto x = random_matrix(rows, dim, 2);
  for (auto _ : state) benchmark::DoNotOptimize(probe.forward(x));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(rows));
}
BENCHMARK(BM_ProbeForward)->Args({32, 64})->Args({32, 512})->Args({256, 512});

void BM_ProbeTrainStep(benchmark::State& state) {
  const auto dim = static_cast<std::size_t>(state.range(0));
  auto probe = syneval::Probe::init({dim, {512, 256}, 1, 1});
  const auto x = random_matrix(32, dim, 3);
  const auto y = random_matrix(32, 1, 4);
  syneval::AdamConfig cfg;
  auto adam = syneval::AdamState::for_parameters(probe.parameters());
  for (auto _ : state) {
    const auto step = syneval::mse_step(probe, x, y);
    syneval::adam_step(probe.parameters(), step.grads, adam, cfg);
  }
  state.SetItemsProcessed(state.iterations() * 32);
}
BENCHMARK(BM_ProbeTrainStep)->Arg(64)->Arg(512);

void BM_SlpFit(benchmark::State& state) {
  const syneval::SupervisedSet train{random_matrix(700, 16, 5), random_matrix(700, 1, 6)};
  const syneval::SupervisedSet val{random_matrix(150, 16, 7), random_matrix(150, 1, 8)};
  syneval::AdamConfig cfg;
  cfg.max_epochs = 20;
  cfg.patience = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(syneval::train_probe({16, {}, 1, 9}, train, val, cfg));
  }
}
BENCHMARK(BM_SlpFit)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
