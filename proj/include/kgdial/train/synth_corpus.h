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

#ifndef KGDIAL_TRAIN_SYNTH_CORPUS_H_
#define KGDIAL_TRAIN_SYNTH_CORPUS_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "kgdial/knowledge/assertion.h"
#include "kgdial/train/dataset.h"

namespace kgdial {

// Planted-knowledge corpus. Each concept token owns `signals_per_concept`
// signal tokens; a pair mentions one concept in the message and one of its
// signals in the response, both among filler words. The knowledge base links
// concepts to their signals, except that a `noise_rate` fraction of links
// point at a signal of another concept.
struct SynthConfig {
  std::size_t n_pairs = 5000;
  std::size_t n_concepts = 200;
  std::size_t signals_per_concept = 10;
  std::size_t filler_vocab = 200;
  std::size_t message_fillers = 2;
  std::size_t response_fillers = 2;
  double noise_rate = 0.15;
  std::uint64_t seed = 1;
  std::vector<std::string> relations = {"RelatedTo", "UsedFor", "HasProperty",
                                        "AtLocation"};

  void Validate() const;
};

struct SynthCorpus {
  std::vector<DialoguePair> pairs;
  std::vector<Assertion> assertions;
  // concept -> signals it truly owns
  std::map<std::string, std::vector<std::string>> signals;
};

SynthCorpus GenerateSynthCorpus(const SynthConfig &config);

std::string ConceptToken(std::size_t i);
std::string SignalToken(std::size_t i);
std::string FillerToken(std::size_t i);

}  // namespace kgdial

#endif  // KGDIAL_TRAIN_SYNTH_CORPUS_H_
