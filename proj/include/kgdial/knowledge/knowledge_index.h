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

#ifndef KGDIAL_KNOWLEDGE_KNOWLEDGE_INDEX_H_
#define KGDIAL_KNOWLEDGE_KNOWLEDGE_INDEX_H_

#include <cstddef>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <unordered_map>
#include <vector>

#include "kgdial/knowledge/assertion.h"
#include "kgdial/knowledge/stopwords.h"
#include "kgdial/text/vocabulary.h"

namespace kgdial {

inline constexpr int kDefaultMaxNgram = 5;

// A message n-gram that hit an index key.
struct ConceptMatch {
  std::string key;
  std::size_t position = 0;

  bool operator==(const ConceptMatch &other) const = default;
};

// The assertions concerned with a message, de-duplicated in first-hit order.
struct RetrievedSet {
  std::vector<AssertionId> assertion_ids;
  std::vector<ConceptMatch> matched_concepts;

  std::size_t size() const { return assertion_ids.size(); }
  bool empty() const { return assertion_ids.empty(); }
};

struct BuildStats {
  std::size_t input_assertions = 0;
  std::size_t dropped_out_of_vocabulary = 0;
  std::size_t dropped_no_key = 0;
  std::size_t skipped_stopword_keys = 0;
  std::size_t skipped_long_keys = 0;
};

struct IndexStats {
  std::size_t concepts = 0;
  std::size_t assertions = 0;
  double mean_assertions_per_concept = 0;
  // concepts_by_length[n-1] counts keys of n words.
  std::vector<std::size_t> concepts_by_length;
  std::size_t single_assertion_concepts = 0;
  std::size_t messages = 0;
  double mean_matched_concepts = 0;
  double mean_retrieved = 0;
  std::size_t messages_without_concepts = 0;
};

using Stemmer = std::function<std::string(const std::string &)>;

// Porter stemming, the default unigram stemmer for retrieval.
Stemmer DefaultStemmer();

// Dictionary from concept keys to the assertions mentioning them. Immutable
// after construction; concurrent Retrieve() calls are safe.
class KnowledgeIndex {
 public:
  KnowledgeIndex() = default;

  // Keeps an assertion when its relation and every concept word are in
  // `vocab`; each concept becomes a key unless it is a stopword unigram or
  // longer than `max_n` words.
  static KnowledgeIndex Build(const std::vector<Assertion> &assertions,
                              const Vocabulary &vocab, int max_n,
                              const StopwordSet &stopwords,
                              BuildStats *stats = nullptr);

  // n-gram lookup over the message. Unigrams skip stopwords and try both the
  // surface and the stemmed form; longer n-grams use surface forms only.
  RetrievedSet Retrieve(const std::vector<std::string> &message_tokens,
                        const Stemmer &stemmer) const;
  RetrievedSet Retrieve(const std::vector<std::string> &message_tokens) const;

  const Assertion &assertion(AssertionId id) const { return assertions_.at(id); }
  const std::vector<Assertion> &assertions() const { return assertions_; }
  std::size_t num_assertions() const { return assertions_.size(); }
  std::size_t num_concepts() const { return entries_.size(); }
  int max_n() const { return max_n_; }
  const StopwordSet &stopwords() const { return stopwords_; }

  // Assertion ids listed under `key`; empty when the key is absent.
  const std::vector<AssertionId> &Lookup(const std::string &key) const;
  bool HasKey(const std::string &key) const { return entries_.count(key) > 0; }
  const std::map<std::string, std::vector<AssertionId>> &entries() const {
    return entries_;
  }

  // Self-describing text format; round-trips exactly.
  void Save(std::ostream &out) const;
  static KnowledgeIndex Load(std::istream &in);
  void SaveFile(const std::string &path) const;
  static KnowledgeIndex LoadFile(const std::string &path);

  bool operator==(const KnowledgeIndex &other) const {
    return max_n_ == other.max_n_ && stopwords_ == other.stopwords_ &&
           assertions_ == other.assertions_ && entries_ == other.entries_;
  }

 private:
  std::vector<Assertion> assertions_;
  std::map<std::string, std::vector<AssertionId>> entries_;
  StopwordSet stopwords_;
  int max_n_ = kDefaultMaxNgram;
};

// Splits a concept into words: [c11, c12, ..., relation, c21, c22, ...].
std::vector<std::string> Linearize(const Assertion &assertion);

// Concept and retrieval statistics over a message corpus.
IndexStats ComputeIndexStats(
    const KnowledgeIndex &index,
    const std::vector<std::vector<std::string>> &messages,
    const Stemmer &stemmer);

}  // namespace kgdial

#endif  // KGDIAL_KNOWLEDGE_KNOWLEDGE_INDEX_H_
