// Copyright 2026 The plmneuron Authors
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

#include "plmneuron/oracle_model.h"
#include "plmneuron/sequence.h"
#include "plmneuron/toy_transformer.h"

namespace plmneuron {
namespace {

ModelConfig Config(int layers, int hidden, int ffn) {
  ModelConfig c;
  c.num_layers = layers;
  c.hidden_dim = hidden;
  c.ffn_dim = ffn;
  c.num_heads = 4;
  c.max_positions = 258;
  c.seed = 1;
  return c;
}

void BM_ToyForward(benchmark::State& state) {
  const ToyTransformer model(Config(6, 64, 128));
  const TokenSequence tokens = Tokenize(RandomSequence(state.range(0), 3));
  for (auto _ : state) {
    benchmark::DoNotOptimize(model.Forward(tokens));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ToyForward)->Arg(32)->Arg(100)->Arg(256);

void BM_ToyForwardIntervened(benchmark::State& state) {
  const ToyTransformer model(Config(6, 64, 128));
  const TokenSequence tokens = Tokenize(RandomSequence(100, 3));
  InterventionSpec spec;
  for (int i = 0; i < state.range(0); ++i) spec.Add({i % 6, i}, 10.0, 3.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(model.Forward(tokens, spec));
  }
}
BENCHMARK(BM_ToyForwardIntervened)->Arg(1)->Arg(16);

void BM_OracleForward(benchmark::State& state) {
  const SyntheticOracleModel model(6, 32, {{{1, 5}, Feature::kGravy, 1}});
  const TokenSequence tokens = Tokenize(RandomSequence(state.range(0), 3));
  for (auto _ : state) {
    benchmark::DoNotOptimize(model.Forward(tokens));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_OracleForward)->Arg(100)->Arg(1000);

}  // namespace
}  // namespace plmneuron
