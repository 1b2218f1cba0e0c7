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

#include "kgdial/train/dataset.h"

#include <algorithm>
#include <cctype>
#include <map>
#include <random>
#include <stdexcept>

#include "kgdial/text/normalize.h"
#include "kgdial/util/hash.h"

namespace kgdial {

namespace {

constexpr int kMaxRedraws = 1000;

bool HasContentWord(const std::vector<std::string> &tokens,
                    const StopwordSet &stopwords) {
  for (const std::string &t : tokens) {
    bool has_alnum = std::any_of(t.begin(), t.end(), [](char c) {
      unsigned char u = static_cast<unsigned char>(c);
      return u < 128 && std::isalnum(u);
    });
    if (has_alnum && !stopwords.count(t)) return true;
  }
  return false;
}

}  // namespace

std::vector<EncodedPair> EncodePairs(const std::vector<DialoguePair> &pairs,
                                     const Vocabulary &vocab) {
  std::vector<EncodedPair> out;
  out.reserve(pairs.size());
  for (const DialoguePair &p : pairs) {
    out.push_back({vocab.Encode(NormalizeAndTokenize(p.message)),
                   vocab.Encode(NormalizeAndTokenize(p.response)), p.group});
  }
  return out;
}

std::vector<LabeledTriple> BuildTrainingSet(
    const std::vector<EncodedPair> &pairs, std::uint64_t seed) {
  if (pairs.size() < 2) {
    throw std::invalid_argument(
        "training set needs at least two pairs to draw negatives");
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> other(0, pairs.size() - 2);
  std::vector<LabeledTriple> triples;
  triples.reserve(2 * pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    triples.push_back({pairs[i].message, pairs[i].response, 1, i});
    std::size_t j = i;
    for (int attempt = 0;; ++attempt) {
      if (attempt == kMaxRedraws) {
        throw std::invalid_argument(
            "training set: every other response equals pair " +
            std::to_string(i) + "'s ground truth");
      }
      j = other(rng);
      if (j >= i) ++j;
      if (pairs[j].response.tokens != pairs[i].response.tokens) break;
    }
    triples.push_back({pairs[i].message, pairs[j].response, 0, i});
  }
  std::shuffle(triples.begin(), triples.end(), rng);
  return triples;
}

std::vector<TrainingExample> PrepareExamples(
    const std::vector<LabeledTriple> &triples, const Vocabulary &vocab,
    const KnowledgeIndex *index, std::size_t max_memory) {
  std::vector<TrainingExample> out;
  out.reserve(triples.size());
  std::map<std::size_t, Memory> cache;
  for (const LabeledTriple &t : triples) {
    TrainingExample ex;
    ex.message = t.message.ids;
    ex.response = t.response.ids;
    ex.label = t.label;
    if (index) {
      auto it = cache.find(t.source);
      if (it == cache.end()) {
        Memory memory = BuildMemory(*index, vocab,
                                    index->Retrieve(t.message.tokens),
                                    max_memory);
        it = cache.emplace(t.source, std::move(memory)).first;
      }
      ex.memory = it->second;
    }
    out.push_back(std::move(ex));
  }
  return out;
}

std::vector<DialoguePair> FilterEvalPairs(
    const std::vector<DialoguePair> &pairs, const KnowledgeIndex &index,
    const StopwordSet &stopwords) {
  std::vector<DialoguePair> kept;
  for (const DialoguePair &p : pairs) {
    auto message = NormalizeAndTokenize(p.message);
    auto response = NormalizeAndTokenize(p.response);
    if (message.size() < 3 || response.size() < 3) continue;
    if (!HasContentWord(message, stopwords) ||
        !HasContentWord(response, stopwords)) {
      continue;
    }
    if (index.Retrieve(message).matched_concepts.empty()) continue;
    kept.push_back(p);
  }
  return kept;
}

std::vector<TokenSequence> EvalInstance::distractors() const {
  std::vector<TokenSequence> out;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (i != ground_truth_slot) out.push_back(candidates[i]);
  }
  return out;
}

std::vector<std::vector<int>> EvalInstance::candidate_ids() const {
  std::vector<std::vector<int>> out;
  out.reserve(candidates.size());
  for (const TokenSequence &c : candidates) out.push_back(c.ids);
  return out;
}

void AttachRetrieval(EvalInstance &instance, const KnowledgeIndex &index,
                     const Vocabulary &vocab, std::size_t max_memory) {
  instance.retrieved = index.Retrieve(instance.message.tokens);
  instance.memory = BuildMemory(index, vocab, instance.retrieved, max_memory);
}

std::vector<EvalInstance> MakeCandidateSets(
    const std::vector<EncodedPair> &pairs, std::size_t distractor_count,
    std::uint64_t seed, const KnowledgeIndex *index, const Vocabulary &vocab,
    std::size_t max_memory) {
  std::vector<EvalInstance> out;
  out.reserve(pairs.size());
  std::vector<std::size_t> eligible;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    std::mt19937_64 rng(MixSeed(seed, i));
    eligible.clear();
    for (std::size_t j = 0; j < pairs.size(); ++j) {
      if (j == i) continue;
      if (!pairs[i].group.empty() && pairs[j].group == pairs[i].group) {
        continue;
      }
      if (pairs[j].response.tokens == pairs[i].response.tokens) continue;
      eligible.push_back(j);
    }
    if (eligible.size() < distractor_count) {
      throw std::invalid_argument(
          "candidate sets: pair " + std::to_string(i) + " has only " +
          std::to_string(eligible.size()) + " eligible distractors, need " +
          std::to_string(distractor_count));
    }
    // Partial Fisher-Yates: the first distractor_count slots are a uniform
    // sample without replacement.
    for (std::size_t d = 0; d < distractor_count; ++d) {
      std::uniform_int_distribution<std::size_t> pick(d, eligible.size() - 1);
      std::swap(eligible[d], eligible[pick(rng)]);
    }
    EvalInstance inst;
    inst.id = std::to_string(i);
    inst.message = pairs[i].message;
    inst.group = pairs[i].group;
    std::uniform_int_distribution<std::size_t> slot(0, distractor_count);
    inst.ground_truth_slot = slot(rng);
    std::size_t next = 0;
    for (std::size_t c = 0; c <= distractor_count; ++c) {
      if (c == inst.ground_truth_slot) {
        inst.candidates.push_back(pairs[i].response);
      } else {
        inst.candidates.push_back(pairs[eligible[next++]].response);
      }
    }
    if (index) AttachRetrieval(inst, *index, vocab, max_memory);
    out.push_back(std::move(inst));
  }
  return out;
}

}  // namespace kgdial
