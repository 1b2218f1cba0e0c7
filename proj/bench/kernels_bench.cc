// Copyright 2026 The kgdial Authors.
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

// Serial reference against the OpenMP kernels on a desk-scale Tri-LSTM.

#include <benchmark/benchmark.h>

#include <vector>

#include "kgdial/knowledge/knowledge_index.h"
#include "kgdial/knowledge/stopwords.h"
#include "kgdial/models/model.h"
#include "kgdial/text/normalize.h"
#include "kgdial/train/dataset.h"
#include "kgdial/train/kernels.h"
#include "kgdial/train/synth_corpus.h"

namespace kgdial {
namespace {

struct Problem {
  Vocabulary vocab;
  KnowledgeIndex index;
  std::vector<TrainingExample> examples;
  std::vector<EvalInstance> instances;
  Model model;
};

Problem &Shared() {
  static Problem *problem = [] {
    SynthConfig sc;
    sc.n_pairs = 600;
    sc.n_concepts = 40;
    SynthCorpus corpus = GenerateSynthCorpus(sc);
    std::vector<std::vector<std::string>> text;
    for (const DialoguePair &p : corpus.pairs) {
      text.push_back(NormalizeAndTokenize(p.message));
      text.push_back(NormalizeAndTokenize(p.response));
    }
    for (const Assertion &a : corpus.assertions) {
      text.push_back({a.concept1, a.concept2});
    }
    Vocabulary vocab = Vocabulary::Build(text, 1, sc.relations);
    KnowledgeIndex index = KnowledgeIndex::Build(
        corpus.assertions, vocab, kDefaultMaxNgram, DefaultStopwords());
    auto pairs = EncodePairs(corpus.pairs, vocab);
    auto examples = PrepareExamples(BuildTrainingSet(pairs, 1), vocab, &index);
    std::vector<EncodedPair> eval(pairs.begin(), pairs.begin() + 200);
    auto instances = MakeCandidateSets(eval, 9, 1, &index, vocab);
    ModelConfig config;
    config.kind = ModelKind::kTriLstm;
    config.embedding_dim = 16;
    config.hidden_dim = 32;
    config.vocab_size = static_cast<std::size_t>(vocab.size());
    Model model = Model::Initialize(config, 1);
    return new Problem{std::move(vocab), std::move(index), std::move(examples),
                       std::move(instances), std::move(model)};
  }();
  return *problem;
}

void BM_BatchGradient(benchmark::State &state) {
  Problem &p = Shared();
  const auto execution = static_cast<Execution>(state.range(0));
  std::vector<const TrainingExample *> batch;
  for (std::size_t i = 0; i < 64; ++i) batch.push_back(&p.examples[i]);
  GradientWorkspace workspace(p.model.params(), batch.size());
  nn::Gradients total(p.model.params());
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        workspace.BatchGradient(p.model, batch, total, execution));
  }
  state.SetItemsProcessed(state.iterations() * 64);
}
BENCHMARK(BM_BatchGradient)
    ->Arg(static_cast<int>(Execution::kSerial))
    ->Arg(static_cast<int>(Execution::kParallel))
    ->Unit(benchmark::kMillisecond);

void BM_ScoreInstances(benchmark::State &state) {
  Problem &p = Shared();
  const auto execution = static_cast<Execution>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ScoreInstances(p.model, p.instances, execution));
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<long>(p.instances.size()));
}
BENCHMARK(BM_ScoreInstances)
    ->Arg(static_cast<int>(Execution::kSerial))
    ->Arg(static_cast<int>(Execution::kParallel))
    ->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace kgdial

BENCHMARK_MAIN();
