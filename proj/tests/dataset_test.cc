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

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "kgdial/knowledge/knowledge_index.h"
#include "kgdial/text/normalize.h"
#include "kgdial/train/dataset.h"
#include "kgdial/train/io.h"
#include "kgdial/train/synth_corpus.h"

namespace kgdial {
namespace {

std::vector<DialoguePair> NumberedPairs(std::size_t n, std::size_t groups = 0) {
  std::vector<DialoguePair> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    std::string group = groups ? "g" + std::to_string(i % groups) : "";
    pairs.push_back({"message number m" + std::to_string(i),
                     "response number r" + std::to_string(i), group});
  }
  return pairs;
}

Vocabulary VocabFor(const std::vector<DialoguePair> &pairs) {
  std::vector<std::vector<std::string>> corpus;
  for (const auto &p : pairs) {
    corpus.push_back(NormalizeAndTokenize(p.message));
    corpus.push_back(NormalizeAndTokenize(p.response));
  }
  return Vocabulary::Build(corpus, 1, DefaultRelations());
}

TEST(TrainingSetTest, TwoPairsGiveFourTriples) {
  auto pairs = NumberedPairs(2);
  auto encoded = EncodePairs(pairs, VocabFor(pairs));
  auto triples = BuildTrainingSet(encoded, 1);
  ASSERT_EQ(triples.size(), 4u);
  int positives = 0;
  for (const LabeledTriple &t : triples) {
    const EncodedPair &own = encoded[t.source];
    const EncodedPair &other = encoded[1 - t.source];
    EXPECT_EQ(t.message.ids, own.message.ids);
    if (t.label == 1) {
      ++positives;
      EXPECT_EQ(t.response.ids, own.response.ids);
    } else {
      EXPECT_EQ(t.response.ids, other.response.ids);
    }
  }
  EXPECT_EQ(positives, 2);
}

TEST(TrainingSetTest, BalancedLabels) {
  auto pairs = NumberedPairs(1000);
  auto encoded = EncodePairs(pairs, VocabFor(pairs));
  auto triples = BuildTrainingSet(encoded, 7);
  ASSERT_EQ(triples.size(), 2000u);
  std::size_t positives = 0;
  for (const auto &t : triples) {
    positives += t.label;
    if (t.label == 0) {
      EXPECT_NE(t.response.ids, encoded[t.source].response.ids);
    }
  }
  EXPECT_EQ(positives, 1000u);
}

TEST(TrainingSetTest, SameSeedSameTriples) {
  auto pairs = NumberedPairs(50);
  auto encoded = EncodePairs(pairs, VocabFor(pairs));
  auto a = BuildTrainingSet(encoded, 3);
  auto b = BuildTrainingSet(encoded, 3);
  auto c = BuildTrainingSet(encoded, 4);
  ASSERT_EQ(a.size(), b.size());
  bool differs = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].message.ids, b[i].message.ids);
    EXPECT_EQ(a[i].response.ids, b[i].response.ids);
    EXPECT_EQ(a[i].label, b[i].label);
    differs = differs || a[i].source != c[i].source ||
              a[i].response.ids != c[i].response.ids;
  }
  EXPECT_TRUE(differs);
}

TEST(TrainingSetTest, NeedsTwoPairs) {
  auto pairs = NumberedPairs(1);
  EXPECT_THROW(BuildTrainingSet(EncodePairs(pairs, VocabFor(pairs)), 1),
               std::invalid_argument);
}

class FilterTest : public ::testing::Test {
 protected:
  FilterTest() {
    stopwords_ = {"i", "it", "is", "the", "a", "so", "to", "my", "me",
                  "at", "you", "of", "and", "in", "that", "with"};
    pairs_ = {
        {"did yoga help you sleep", "yes it helped a lot", ""},
        {"yoga now", "sounds really fun", ""},
        {"i love hawaii so much", "me too friend", ""},
        {"i study chinese at night", "it is the", ""},
        {"the weather is nice today", "yes very sunny today", ""},
        {"painting my room blue", "nice choice of colour", ""},
        {"hawaii is great", "agreed !", ""},
        {"chinese food tonight ?", "count me in", ""},
        {"yoga mats are pricey", "try the market", ""},
        {"paint the fence today", "need help with that", ""},
    };
    std::vector<std::vector<std::string>> corpus;
    for (const auto &p : pairs_) {
      corpus.push_back(NormalizeAndTokenize(p.message));
      corpus.push_back(NormalizeAndTokenize(p.response));
    }
    corpus.push_back({"exercise", "tourism", "language", "household", "color"});
    Vocabulary vocab = Vocabulary::Build(corpus, 1, DefaultRelations());
    index_ = KnowledgeIndex::Build(
        {{"yoga", "IsA", "exercise"},
         {"hawaii", "UsedFor", "tourism"},
         {"chinese", "IsA", "language"},
         {"paint", "RelatedTo", "household_color"}},
        vocab, 5, stopwords_);
  }

  StopwordSet stopwords_;
  std::vector<DialoguePair> pairs_;
  KnowledgeIndex index_;
};

TEST_F(FilterTest, KeepsSixOfTen) {
  auto kept = FilterEvalPairs(pairs_, index_, stopwords_);
  std::vector<DialoguePair> expected = {pairs_[0], pairs_[2], pairs_[5],
                                        pairs_[7], pairs_[8], pairs_[9]};
  EXPECT_EQ(kept, expected);
}

TEST_F(FilterTest, IndividualRules) {
  auto keeps = [&](const DialoguePair &p) {
    return FilterEvalPairs({p}, index_, stopwords_).size() == 1;
  };
  EXPECT_FALSE(keeps({"yoga rocks", "i agree with that", ""}));
  EXPECT_FALSE(keeps({"did yoga help", "it is the", ""}));
  EXPECT_FALSE(keeps({"nothing matches here", "fine by me", ""}));
  EXPECT_TRUE(keeps({"did yoga help", "it is great", ""}));
}

TEST(CandidateSetTest, ElevenPairsGiveTenCandidates) {
  auto pairs = NumberedPairs(11);
  Vocabulary vocab = VocabFor(pairs);
  auto instances = MakeCandidateSets(EncodePairs(pairs, vocab), 9, 1, nullptr, vocab);
  ASSERT_EQ(instances.size(), 11u);
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const EvalInstance &inst = instances[i];
    EXPECT_EQ(inst.candidates.size(), 10u);
    EXPECT_EQ(inst.ground_truth().tokens,
              NormalizeAndTokenize(pairs[i].response));
    EXPECT_EQ(inst.distractors().size(), 9u);
  }
}

TEST(CandidateSetTest, GroundTruthNeverADistractor) {
  auto pairs = NumberedPairs(1000);
  pairs[17].response = pairs[3].response;
  Vocabulary vocab = VocabFor(pairs);
  auto instances = MakeCandidateSets(EncodePairs(pairs, vocab), 9, 2, nullptr, vocab);
  std::map<std::size_t, int> slots;
  for (const EvalInstance &inst : instances) {
    ++slots[inst.ground_truth_slot];
    std::set<std::vector<int>> seen;
    for (const TokenSequence &d : inst.distractors()) {
      EXPECT_NE(d.ids, inst.ground_truth().ids);
      EXPECT_TRUE(seen.insert(d.ids).second);
    }
  }
  EXPECT_EQ(slots.size(), 10u);
}

TEST(CandidateSetTest, SameGroupExcluded) {
  auto pairs = NumberedPairs(200, 20);
  Vocabulary vocab = VocabFor(pairs);
  auto encoded = EncodePairs(pairs, vocab);
  auto instances = MakeCandidateSets(encoded, 9, 3, nullptr, vocab);
  std::map<std::vector<int>, std::string> group_of;
  for (const auto &p : encoded) group_of[p.response.ids] = p.group;
  for (const EvalInstance &inst : instances) {
    for (const TokenSequence &d : inst.distractors()) {
      EXPECT_NE(group_of[d.ids], inst.group);
    }
  }
}

TEST(CandidateSetTest, Deterministic) {
  auto pairs = NumberedPairs(40);
  Vocabulary vocab = VocabFor(pairs);
  auto encoded = EncodePairs(pairs, vocab);
  auto a = MakeCandidateSets(encoded, 9, 5, nullptr, vocab);
  auto b = MakeCandidateSets(encoded, 9, 5, nullptr, vocab);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].id, b[i].id);
    EXPECT_EQ(a[i].ground_truth_slot, b[i].ground_truth_slot);
    EXPECT_EQ(a[i].candidate_ids(), b[i].candidate_ids());
  }
}

TEST(CandidateSetTest, PoolTooSmall) {
  auto pairs = NumberedPairs(9);
  Vocabulary vocab = VocabFor(pairs);
  EXPECT_THROW(MakeCandidateSets(EncodePairs(pairs, vocab), 9, 1, nullptr, vocab),
               std::invalid_argument);
}

TEST(CandidateSetTest, AttachesRetrieval) {
  std::vector<DialoguePair> pairs = NumberedPairs(12);
  pairs[0].message = "i love hawaii";
  Vocabulary vocab = Vocabulary::Build(
      {{"i", "love", "hawaii", "tourism", "message", "number", "response"}}, 1,
      DefaultRelations());
  KnowledgeIndex index = KnowledgeIndex::Build(
      {{"hawaii", "UsedFor", "tourism"}}, vocab, 5, DefaultStopwords());
  auto instances = MakeCandidateSets(EncodePairs(pairs, vocab), 9, 1, &index, vocab);
  EXPECT_EQ(instances[0].retrieved.assertion_ids, std::vector<AssertionId>{0});
  ASSERT_EQ(instances[0].memory.size(), 1u);
  EXPECT_EQ(instances[0].memory.sequences[0].size(), 3u);
  EXPECT_TRUE(instances[1].memory.empty());
}

TEST(PairsIoTest, RoundTrip) {
  std::vector<DialoguePair> pairs = {{"a b", "c d", ""}, {"e", "f", "grp"}};
  std::stringstream buffer;
  WritePairs(buffer, pairs);
  EXPECT_EQ(ReadPairs(buffer), pairs);
}

TEST(PairsIoTest, MalformedLineNamesLineNumber) {
  std::istringstream in("a\tb\n\nno tab here\n");
  try {
    ReadPairs(in);
    FAIL() << "expected an error";
  } catch (const std::runtime_error &e) {
    EXPECT_NE(std::string(e.what()).find("3"), std::string::npos) << e.what();
  }
}

TEST(InstancesIoTest, RoundTrip) {
  auto pairs = NumberedPairs(15, 4);
  Vocabulary vocab = VocabFor(pairs);
  auto instances = MakeCandidateSets(EncodePairs(pairs, vocab), 9, 8, nullptr, vocab);
  std::stringstream buffer;
  WriteInstances(buffer, instances);
  auto loaded = ReadInstances(buffer, vocab, nullptr);
  ASSERT_EQ(loaded.size(), instances.size());
  for (std::size_t i = 0; i < loaded.size(); ++i) {
    EXPECT_EQ(loaded[i].id, instances[i].id);
    EXPECT_EQ(loaded[i].group, instances[i].group);
    EXPECT_EQ(loaded[i].ground_truth_slot, instances[i].ground_truth_slot);
    EXPECT_EQ(loaded[i].candidate_ids(), instances[i].candidate_ids());
    EXPECT_EQ(loaded[i].message.ids, instances[i].message.ids);
  }
}

TEST(SynthCorpusTest, NoiseFreeLinksMatchResponses) {
  SynthConfig config;
  config.n_pairs = 500;
  config.n_concepts = 20;
  config.noise_rate = 0;
  SynthCorpus corpus = GenerateSynthCorpus(config);
  ASSERT_EQ(corpus.pairs.size(), 500u);
  std::set<std::pair<std::string, std::string>> links;
  for (const Assertion &a : corpus.assertions) links.insert({a.concept1, a.concept2});
  for (const DialoguePair &p : corpus.pairs) {
    auto message = NormalizeAndTokenize(p.message);
    auto response = NormalizeAndTokenize(p.response);
    EXPECT_EQ(message.size(), config.message_fillers + 1);
    EXPECT_NE(std::find(message.begin(), message.end(), p.group), message.end());
    int linked = 0;
    for (const std::string &w : response) linked += links.count({p.group, w});
    EXPECT_EQ(linked, 1) << p.message << " / " << p.response;
  }
}

TEST(SynthCorpusTest, NoisyLinkFraction) {
  SynthConfig config;
  config.n_concepts = 200;
  config.signals_per_concept = 20;
  SynthCorpus corpus = GenerateSynthCorpus(config);
  ASSERT_EQ(corpus.assertions.size(), 4000u);
  std::size_t wrong = 0;
  for (const Assertion &a : corpus.assertions) {
    const auto &owned = corpus.signals.at(a.concept1);
    if (std::find(owned.begin(), owned.end(), a.concept2) == owned.end()) ++wrong;
  }
  // Binomial(4000, 0.15): four standard deviations is about 0.023.
  EXPECT_NEAR(static_cast<double>(wrong) / 4000, 0.15, 0.023);
}

TEST(SynthCorpusTest, DeterministicAndValidated) {
  SynthConfig config;
  config.n_pairs = 100;
  EXPECT_EQ(GenerateSynthCorpus(config).pairs, GenerateSynthCorpus(config).pairs);
  config.n_concepts = 0;
  EXPECT_THROW(GenerateSynthCorpus(config), std::invalid_argument);
  config.n_concepts = 5;
  config.noise_rate = 1.0;
  EXPECT_THROW(GenerateSynthCorpus(config), std::invalid_argument);
}

}  // namespace
}  // namespace kgdial
