// Copyright 2026 The qnlp Authors
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

#include <random>
#include <string>
#include <vector>

#include "qnlp/dataset.hpp"
#include "qnlp/pipeline.hpp"
#include "qnlp/tensor.hpp"

namespace {

using namespace qnlp;

const std::vector<std::string> kAdjectiveClause{"siva", "hates", "thrilling", "comics"};

ParameterValues random_values(const Circuit &c, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 6.283185307179586);
  ParameterValues v;
  for (const auto &n : referenced_parameters(c)) v[n] = angle(rng);
  return v;
}

void BM_Analyze(benchmark::State &state) {
  const auto lex = default_lexicon();
  for (auto _ : state) benchmark::DoNotOptimize(analyze(kAdjectiveClause, lex));
}
BENCHMARK(BM_Analyze);

void BM_Compile(benchmark::State &state) {
  const auto a = analyze(kAdjectiveClause, default_lexicon());
  const auto &d = state.range(0) ? a.rewritten : a.diagram;
  for (auto _ : state) benchmark::DoNotOptimize(compile(d));
}
BENCHMARK(BM_Compile)->Arg(0)->Arg(1);

// 7-qubit original vs 4-qubit rewritten circuit.
void BM_RunExact(benchmark::State &state) {
  const auto a = analyze(kAdjectiveClause, default_lexicon());
  const auto c = compile(state.range(0) ? a.rewritten : a.diagram);
  const auto bound = qnlp::bind(c, random_values(c, 1));
  for (auto _ : state) benchmark::DoNotOptimize(run_exact(bound));
}
BENCHMARK(BM_RunExact)->Arg(0)->Arg(1);

void BM_RunNoisy(benchmark::State &state) {
  const auto a = analyze(kAdjectiveClause, default_lexicon());
  const auto c = compile(a.rewritten);
  const auto bound = qnlp::bind(c, random_values(c, 2));
  NoiseModel nm;
  nm.shots = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    ++nm.seed;
    benchmark::DoNotOptimize(run_noisy(bound, nm));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RunNoisy)->Arg(1024)->Arg(16384);

void BM_TensorEvaluate(benchmark::State &state) {
  const auto lex = default_lexicon();
  const auto d = analyze(kAdjectiveClause, lex).diagram;
  const auto store = TensorStore::random(lex, 3);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(d, store));
}
BENCHMARK(BM_TensorEvaluate);

void BM_TensorGradient(benchmark::State &state) {
  const auto lex = default_lexicon();
  const auto d = analyze(kAdjectiveClause, lex).diagram;
  const auto store = TensorStore::random(lex, 4);
  for (auto _ : state) benchmark::DoNotOptimize(gradient(d, store, 0));
}
BENCHMARK(BM_TensorGradient);

// One SPSA iteration over the default corpus.
void BM_SpsaIteration(benchmark::State &state) {
  const auto lex = default_lexicon();
  const auto corpus = make_corpus(lex, gen_data(lex, GenConfig{}));
  RunConfig cfg;
  cfg.profile = state.range(0) ? Profile::QuantumNoisy : Profile::QuantumExact;
  cfg.iterations = 1;
  for (auto _ : state) benchmark::DoNotOptimize(train_profile(corpus, cfg));
}
BENCHMARK(BM_SpsaIteration)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
