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

#ifndef KGDIAL_TRAIN_DATASET_H_
#define KGDIAL_TRAIN_DATASET_H_

#include <cstdint>
#include <string>
#include <vector>

#include "kgdial/knowledge/knowledge_index.h"
#include "kgdial/knowledge/stopwords.h"
#include "kgdial/models/model.h"
#include "kgdial/text/vocabulary.h"

namespace kgdial {

// One message/response exchange in raw text. `group` is an optional
// clustering key (the planted concept in synthetic data); pairs sharing a
// non-empty group never serve as each other's distractors.
struct DialoguePair {
  std::string message;
  std::string response;
  std::string group;

  bool operator==(const DialoguePair &other) const = default;
};

struct EncodedPair {
  TokenSequence message;
  TokenSequence response;
  std::string group;
};

// Normalizes, tokenizes and encodes every pair.
std::vector<EncodedPair> EncodePairs(const std::vector<DialoguePair> &pairs,
                                     const Vocabulary &vocab);

struct LabeledTriple {
  TokenSequence message;
  TokenSequence response;
  int label = 0;
  // Index of the pair that supplied the message.
  std::size_t source = 0;
};

// One positive per pair plus one negative whose response comes uniformly
// from another pair (re-drawn while it equals the ground truth). Output is
// shuffled. Throws std::invalid_argument for fewer than two pairs.
std::vector<LabeledTriple> BuildTrainingSet(
    const std::vector<EncodedPair> &pairs, std::uint64_t seed);

// A triple with its message memory resolved, ready for the trainer.
struct TrainingExample {
  std::vector<int> message;
  Memory memory;
  std::vector<int> response;
  int label = 0;
};

// Attaches retrieved memory to each triple; `index` may be null for
// knowledge-free models.
std::vector<TrainingExample> PrepareExamples(
    const std::vector<LabeledTriple> &triples, const Vocabulary &vocab,
    const KnowledgeIndex *index, std::size_t max_memory = 0);

// Keeps pairs where message and response each have at least three tokens
// and one non-stopword word, and the message matches at least one concept.
std::vector<DialoguePair> FilterEvalPairs(const std::vector<DialoguePair> &pairs,
                                          const KnowledgeIndex &index,
                                          const StopwordSet &stopwords);

struct EvalInstance {
  std::string id;
  TokenSequence message;
  // Ground truth and distractors in presentation order.
  std::vector<TokenSequence> candidates;
  std::size_t ground_truth_slot = 0;
  RetrievedSet retrieved;
  Memory memory;
  std::string group;

  const TokenSequence &ground_truth() const {
    return candidates.at(ground_truth_slot);
  }
  std::vector<TokenSequence> distractors() const;
  std::vector<std::vector<int>> candidate_ids() const;
};

inline constexpr std::size_t kDefaultDistractors = 9;

// For each pair, samples `distractor_count` responses without replacement
// from the other pairs (skipping copies of the ground truth and same-group
// pairs), places the ground truth at a seeded random slot, and attaches
// retrieval when `index` is given. Throws std::invalid_argument when some
// pair has too few eligible distractors.
std::vector<EvalInstance> MakeCandidateSets(
    const std::vector<EncodedPair> &pairs, std::size_t distractor_count,
    std::uint64_t seed, const KnowledgeIndex *index, const Vocabulary &vocab,
    std::size_t max_memory = 0);

// Recomputes retrieval and memory of an instance against `index`.
void AttachRetrieval(EvalInstance &instance, const KnowledgeIndex &index,
                     const Vocabulary &vocab, std::size_t max_memory = 0);

}  // namespace kgdial

#endif  // KGDIAL_TRAIN_DATASET_H_
