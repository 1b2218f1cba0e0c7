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

#include "kgdial/knowledge/knowledge_index.h"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "kgdial/knowledge/porter_stemmer.h"

namespace kgdial {

namespace {

constexpr std::string_view kIndexMagic = "#kgdial-index v1";

std::string JoinWords(const std::vector<std::string> &tokens, std::size_t begin,
                      std::size_t n) {
  std::string key = tokens[begin];
  for (std::size_t i = 1; i < n; ++i) {
    key.push_back('_');
    key += tokens[begin + i];
  }
  return key;
}

void ExpectLine(std::istream &in, std::string &line, const char *what) {
  if (!std::getline(in, line)) {
    throw std::runtime_error(std::string("index: truncated file, expected ") +
                             what);
  }
}

std::size_t ParseCount(const std::string &line, std::string_view label) {
  std::string prefix = std::string(label) + " ";
  if (line.rfind(prefix, 0) != 0) {
    throw std::runtime_error("index: expected '" + std::string(label) + "'");
  }
  return std::stoull(line.substr(prefix.size()));
}

std::vector<std::string> SplitTab(const std::string &line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    if (tab == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

}  // namespace

Stemmer DefaultStemmer() {
  return [](const std::string &word) { return PorterStem(word); };
}

std::vector<std::string> Linearize(const Assertion &assertion) {
  std::vector<std::string> tokens = ConceptWords(assertion.concept1);
  tokens.push_back(assertion.relation);
  for (std::string &w : ConceptWords(assertion.concept2)) {
    tokens.push_back(std::move(w));
  }
  return tokens;
}

KnowledgeIndex KnowledgeIndex::Build(const std::vector<Assertion> &assertions,
                                     const Vocabulary &vocab, int max_n,
                                     const StopwordSet &stopwords,
                                     BuildStats *stats) {
  if (max_n < 1) throw std::invalid_argument("max_n must be >= 1");
  BuildStats local;
  local.input_assertions = assertions.size();

  KnowledgeIndex index;
  index.max_n_ = max_n;
  index.stopwords_ = stopwords;

  for (const Assertion &raw : assertions) {
    Assertion a = raw;
    a.concept1 = NormalizeConcept(raw.concept1);
    a.concept2 = NormalizeConcept(raw.concept2);
    std::vector<std::string> words1 = ConceptWords(a.concept1);
    std::vector<std::string> words2 = ConceptWords(a.concept2);

    bool in_vocab = vocab.Contains(a.relation) && !words1.empty() &&
                    !words2.empty();
    for (const auto *words : {&words1, &words2}) {
      for (const std::string &w : *words) {
        if (!vocab.Contains(w)) in_vocab = false;
      }
    }
    if (!in_vocab) {
      ++local.dropped_out_of_vocabulary;
      continue;
    }

    std::vector<std::string> keys;
    for (const auto &[concept_name, words] :
         {std::pair{&a.concept1, &words1}, std::pair{&a.concept2, &words2}}) {
      if (static_cast<int>(words->size()) > max_n) {
        ++local.skipped_long_keys;
        continue;
      }
      if (words->size() == 1 && stopwords.count(*concept_name)) {
        ++local.skipped_stopword_keys;
        continue;
      }
      if (keys.empty() || keys.front() != *concept_name) keys.push_back(*concept_name);
    }
    if (keys.empty()) {
      ++local.dropped_no_key;
      continue;
    }
    auto id = static_cast<AssertionId>(index.assertions_.size());
    index.assertions_.push_back(std::move(a));
    for (const std::string &key : keys) index.entries_[key].push_back(id);
  }
  if (stats) *stats = local;
  return index;
}

const std::vector<AssertionId> &KnowledgeIndex::Lookup(
    const std::string &key) const {
  static const std::vector<AssertionId> empty;
  auto it = entries_.find(key);
  return it == entries_.end() ? empty : it->second;
}

RetrievedSet KnowledgeIndex::Retrieve(
    const std::vector<std::string> &message_tokens,
    const Stemmer &stemmer) const {
  RetrievedSet result;
  std::unordered_set<AssertionId> seen;
  auto hit = [&](const std::string &key, std::size_t position) {
    auto it = entries_.find(key);
    if (it == entries_.end()) return;
    result.matched_concepts.push_back({key, position});
    for (AssertionId id : it->second) {
      if (seen.insert(id).second) result.assertion_ids.push_back(id);
    }
  };

  const std::size_t n_tokens = message_tokens.size();
  for (std::size_t i = 0; i < n_tokens; ++i) {
    const std::string &word = message_tokens[i];
    if (!stopwords_.count(word)) {
      hit(word, i);
      std::string stem = stemmer ? stemmer(word) : word;
      if (stem != word) hit(stem, i);
    }
    for (std::size_t n = 2; n <= static_cast<std::size_t>(max_n_) &&
                            i + n <= n_tokens;
         ++n) {
      hit(JoinWords(message_tokens, i, n), i);
    }
  }
  return result;
}

RetrievedSet KnowledgeIndex::Retrieve(
    const std::vector<std::string> &message_tokens) const {
  static const Stemmer stemmer = DefaultStemmer();
  return Retrieve(message_tokens, stemmer);
}

void KnowledgeIndex::Save(std::ostream &out) const {
  out << kIndexMagic << '\n';
  out << "max_n " << max_n_ << '\n';
  out << "stopwords " << stopwords_.size() << '\n';
  for (const std::string &w : stopwords_) out << w << '\n';
  out << "assertions " << assertions_.size() << '\n';
  WriteAssertions(out, assertions_);
  out << "keys " << entries_.size() << '\n';
  for (const auto &[key, ids] : entries_) {
    out << key;
    for (std::size_t i = 0; i < ids.size(); ++i) {
      out << (i == 0 ? '\t' : ' ') << ids[i];
    }
    out << '\n';
  }
  out << "end\n";
}

KnowledgeIndex KnowledgeIndex::Load(std::istream &in) {
  KnowledgeIndex index;
  std::string line;
  ExpectLine(in, line, "header");
  if (line != kIndexMagic) {
    throw std::runtime_error("index: missing or unsupported header");
  }
  ExpectLine(in, line, "max_n");
  index.max_n_ = static_cast<int>(ParseCount(line, "max_n"));

  ExpectLine(in, line, "stopwords");
  std::size_t n_stop = ParseCount(line, "stopwords");
  for (std::size_t i = 0; i < n_stop; ++i) {
    ExpectLine(in, line, "stopword");
    index.stopwords_.insert(line);
  }

  ExpectLine(in, line, "assertions");
  std::size_t n_assert = ParseCount(line, "assertions");
  index.assertions_.reserve(n_assert);
  for (std::size_t i = 0; i < n_assert; ++i) {
    ExpectLine(in, line, "assertion");
    auto f = SplitTab(line);
    if (f.size() != 4) throw std::runtime_error("index: bad assertion row");
    Assertion a{f[1], f[0], f[2], 0.0};
    auto [ptr, ec] =
        std::from_chars(f[3].data(), f[3].data() + f[3].size(), a.weight);
    if (ec != std::errc()) throw std::runtime_error("index: bad weight");
    index.assertions_.push_back(std::move(a));
  }

  ExpectLine(in, line, "keys");
  std::size_t n_keys = ParseCount(line, "keys");
  for (std::size_t i = 0; i < n_keys; ++i) {
    ExpectLine(in, line, "key");
    std::size_t tab = line.find('\t');
    if (tab == std::string::npos) throw std::runtime_error("index: bad key row");
    std::vector<AssertionId> ids;
    std::istringstream row(line.substr(tab + 1));
    std::uint64_t id;
    while (row >> id) {
      if (id >= n_assert) throw std::runtime_error("index: assertion id out of range");
      ids.push_back(static_cast<AssertionId>(id));
    }
    index.entries_.emplace(line.substr(0, tab), std::move(ids));
  }
  ExpectLine(in, line, "end marker");
  if (line != "end") throw std::runtime_error("index: missing end marker");
  return index;
}

void KnowledgeIndex::SaveFile(const std::string &path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write index: " + path);
  Save(out);
}

KnowledgeIndex KnowledgeIndex::LoadFile(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open index: " + path);
  return Load(in);
}

IndexStats ComputeIndexStats(
    const KnowledgeIndex &index,
    const std::vector<std::vector<std::string>> &messages,
    const Stemmer &stemmer) {
  IndexStats stats;
  stats.concepts = index.num_concepts();
  stats.assertions = index.num_assertions();
  std::size_t total_links = 0;
  for (const auto &[key, ids] : index.entries()) {
    total_links += ids.size();
    std::size_t words = ConceptWords(key).size();
    if (stats.concepts_by_length.size() < words) {
      stats.concepts_by_length.resize(words, 0);
    }
    ++stats.concepts_by_length[words - 1];
    if (ids.size() == 1) ++stats.single_assertion_concepts;
  }
  if (stats.concepts > 0) {
    stats.mean_assertions_per_concept =
        static_cast<double>(total_links) / static_cast<double>(stats.concepts);
  }

  stats.messages = messages.size();
  std::size_t total_concepts = 0;
  std::size_t total_retrieved = 0;
  for (const auto &message : messages) {
    RetrievedSet r = index.Retrieve(message, stemmer);
    std::set<std::string> keys;
    for (const ConceptMatch &m : r.matched_concepts) keys.insert(m.key);
    total_concepts += keys.size();
    total_retrieved += r.size();
    if (keys.empty()) ++stats.messages_without_concepts;
  }
  if (!messages.empty()) {
    stats.mean_matched_concepts = static_cast<double>(total_concepts) /
                                  static_cast<double>(messages.size());
    stats.mean_retrieved = static_cast<double>(total_retrieved) /
                           static_cast<double>(messages.size());
  }
  return stats;
}

}  // namespace kgdial
