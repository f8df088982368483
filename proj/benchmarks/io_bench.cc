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

#include <string>

#include "syneval/embedding_store.h"
#include "syneval/rng.h"

namespace {

syneval::EmbeddingStore make_store(std::size_t n, std::size_t dim) {
  syneval::Rng rng(1);
  syneval::EmbeddingStore store;
  store.matrix = syneval::Matrix(n, dim);
  for (float& v : store.matrix.values()) v = static_cast<float>(rng.normal());
  for (std::size_t i = 0; i < n; ++i) store.ids.push_back("sample-" + std::to_string(i));
  return store;
}

// Args: rows, dim.
void BM_EncodeEmbeddings(benchmark::State& state) {
  const auto store = make_store(static_cast<std::size_t>(state.range(0)),
                                static_cast<std::size_t>(state.range(1)));
  std::size_t bytes = 0;
  for (auto _ : state) {
    const auto encoded = syneval::encode_embeddings(store);
    bytes = encoded.size();
    benchmark::DoNotOptimize(encoded.data());
  }
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(bytes));
}
BENCHMARK(BM_EncodeEmbeddings)->Args({1000, 64})->Args({10000, 512});

void BM_DecodeEmbeddings(benchmark::State& state) {
  const auto encoded = syneval::encode_embeddings(make_store(
      static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1))));
  for (auto _ : state) benchmark::DoNotOptimize(syneval::decode_embeddings(encoded));
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(encoded.size()));
}
BENCHMARK(BM_DecodeEmbeddings)->Args({1000, 64})->Args({10000, 512});

}  // namespace

BENCHMARK_MAIN();
