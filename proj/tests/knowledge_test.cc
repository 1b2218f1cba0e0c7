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

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "kgdial/knowledge/assertion.h"
#include "kgdial/knowledge/knowledge_index.h"
#include "kgdial/knowledge/stopwords.h"
#include "kgdial/text/normalize.h"
#include "kgdial/text/vocabulary.h"
#include "retrieval_oracle.h"

namespace kgdial {
namespace {

using Tokens = std::vector<std::string>;

Vocabulary VocabOf(const Tokens &words) {
  return Vocabulary::Build({words}, 1, DefaultRelations());
}

Tokens Words(const std::string &text) { return NormalizeAndTokenize(text); }

TEST(ParseAssertionsTest, ReadsCaseStudyRows) {
  ParseResult r = ParseAssertions(
      "IsA\tchinese\thuman_language\nIsA\tbonjour\thello_in_french\n",
      DefaultRelations());
  ASSERT_EQ(r.assertions.size(), 2u);
  EXPECT_EQ(r.assertions[0], (Assertion{"chinese", "IsA", "human_language", 1.0}));
  EXPECT_EQ(r.assertions[1],
            (Assertion{"bonjour", "IsA", "hello_in_french", 1.0}));
  EXPECT_EQ(r.stats.warnings(), 0u);
}

TEST(ParseAssertionsTest, EmptyStream) {
  ParseResult r = ParseAssertions("", DefaultRelations());
  EXPECT_TRUE(r.assertions.empty());
  EXPECT_EQ(r.stats.warnings(), 0u);
}

TEST(ParseAssertionsTest, SkipsAndCountsBadLines) {
  ParseResult r = ParseAssertions(
      "# comment\n"
      "IsA\tdog\tpet\t2.5\n"
      "IsA\tdog\n"
      "Likes\tdog\tbone\n"
      "IsA\tdög\tpet\n"
      "IsA\tdog\tpet\tnan\n"
      "IsA\tGo__Shopping_\tFun\n",
      DefaultRelations());
  ASSERT_EQ(r.assertions.size(), 2u);
  EXPECT_DOUBLE_EQ(r.assertions[0].weight, 2.5);
  EXPECT_EQ(r.assertions[1].concept1, "go_shopping");
  EXPECT_EQ(r.assertions[1].concept2, "fun");
  EXPECT_EQ(r.stats.malformed, 2u);
  EXPECT_EQ(r.stats.unknown_relation, 1u);
  EXPECT_EQ(r.stats.bad_characters, 1u);
}

TEST(ParseAssertionsTest, WriteParseRoundTrip) {
  std::vector<Assertion> in = {{"a_b", "IsA", "c", 0.25}, {"d", "HasA", "e", 3}};
  std::stringstream buffer;
  WriteAssertions(buffer, in);
  EXPECT_EQ(ParseAssertions(buffer, DefaultRelations()).assertions, in);
}

TEST(LinearizeTest, SplitsConcepts) {
  EXPECT_EQ(Linearize({"take_a_stand", "UsedFor", "debate"}),
            (Tokens{"take", "a", "stand", "UsedFor", "debate"}));
  EXPECT_EQ(Linearize({"insomnia", "IsA", "sleep_problem"}),
            (Tokens{"insomnia", "IsA", "sleep", "problem"}));
  EXPECT_EQ(Linearize({"hawaii", "UsedFor", "tourism"}),
            (Tokens{"hawaii", "UsedFor", "tourism"}));
}

TEST(KnowledgeIndexTest, KeysBothConcepts) {
  KnowledgeIndex index = KnowledgeIndex::Build(
      {{"dog", "IsA", "pet"}}, VocabOf({"dog", "pet"}), 5, DefaultStopwords());
  EXPECT_EQ(index.num_concepts(), 2u);
  EXPECT_EQ(index.Lookup("dog"), std::vector<AssertionId>{0});
  EXPECT_EQ(index.Lookup("pet"), std::vector<AssertionId>{0});
}

TEST(KnowledgeIndexTest, MultiWordKey) {
  KnowledgeIndex index = KnowledgeIndex::Build(
      {{"mall", "UsedFor", "go_shopping"}}, VocabOf({"mall", "go", "shopping"}),
      5, DefaultStopwords());
  EXPECT_TRUE(index.HasKey("go_shopping"));
}

TEST(KnowledgeIndexTest, DropsOutOfVocabulary) {
  BuildStats stats;
  KnowledgeIndex index = KnowledgeIndex::Build(
      {{"zebra_crossing", "IsA", "pet"}, {"dog", "IsA", "pet"}},
      VocabOf({"dog", "pet", "crossing"}), 5, DefaultStopwords(), &stats);
  EXPECT_EQ(index.num_assertions(), 1u);
  EXPECT_EQ(stats.dropped_out_of_vocabulary, 1u);
  EXPECT_FALSE(index.HasKey("zebra_crossing"));
}

TEST(KnowledgeIndexTest, SkipsStopwordAndLongKeys) {
  BuildStats stats;
  KnowledgeIndex index = KnowledgeIndex::Build(
      {{"the", "RelatedTo", "a_b_c"}}, VocabOf({"the", "a", "b", "c"}), 2,
      {"the"}, &stats);
  EXPECT_EQ(index.num_assertions(), 0u);
  EXPECT_EQ(stats.dropped_no_key, 1u);
  EXPECT_EQ(stats.skipped_stopword_keys, 1u);
  EXPECT_EQ(stats.skipped_long_keys, 1u);
}

TEST(KnowledgeIndexTest, RetrievesCaseStudyAssertions) {
  Tokens words = Words("i was helping my brother with his chinese bonjour "
                       "madame quoi de neuf human language hello in french");
  KnowledgeIndex index = KnowledgeIndex::Build(
      {{"chinese", "IsA", "human_language"},
       {"bonjour", "IsA", "hello_in_french"}},
      VocabOf(words), 5, DefaultStopwords());
  RetrievedSet a = index.Retrieve(Words("i was helping my brother with his chinese"));
  EXPECT_EQ(a.assertion_ids, std::vector<AssertionId>{0});
  RetrievedSet b = index.Retrieve(Words("bonjour madame quoi de neuf"));
  EXPECT_EQ(b.assertion_ids, std::vector<AssertionId>{1});
  ASSERT_EQ(b.matched_concepts.size(), 1u);
  EXPECT_EQ(b.matched_concepts[0], (ConceptMatch{"bonjour", 0}));
}

TEST(KnowledgeIndexTest, NoHitsGivesEmptySet) {
  KnowledgeIndex index = KnowledgeIndex::Build(
      {{"dog", "IsA", "pet"}}, VocabOf({"dog", "pet"}), 5, DefaultStopwords());
  RetrievedSet r = index.Retrieve(Words("nothing to see here"));
  EXPECT_TRUE(r.empty());
  EXPECT_TRUE(r.matched_concepts.empty());
}

TEST(KnowledgeIndexTest, MatchesStemmedUnigrams) {
  KnowledgeIndex index = KnowledgeIndex::Build(
      {{"paint", "RelatedTo", "household_color"}},
      VocabOf({"paint", "household", "color"}), 5, DefaultStopwords());
  RetrievedSet r = index.Retrieve(Words("helping mum painting my bedroom"));
  EXPECT_EQ(r.assertion_ids, std::vector<AssertionId>{0});
  EXPECT_EQ(r.matched_concepts[0], (ConceptMatch{"paint", 2}));
}

TEST(KnowledgeIndexTest, StopwordsNeverMatchAsUnigrams) {
  KnowledgeIndex index = KnowledgeIndex::Build(
      {{"it", "RelatedTo", "thing"}}, VocabOf({"it", "thing"}), 5, {});
  ASSERT_TRUE(index.HasKey("it"));
  KnowledgeIndex with_stop = KnowledgeIndex::Build(
      {{"it", "RelatedTo", "thing"}}, VocabOf({"it", "thing"}), 5, {"it"});
  EXPECT_TRUE(with_stop.Retrieve(Words("it is")).empty());
}

TEST(KnowledgeIndexTest, DeduplicatesAssertions) {
  KnowledgeIndex index = KnowledgeIndex::Build(
      {{"dog", "IsA", "pet"}}, VocabOf({"dog", "pet"}), 5, DefaultStopwords());
  RetrievedSet r = index.Retrieve(Words("dog pet dogs"));
  EXPECT_EQ(r.assertion_ids, std::vector<AssertionId>{0});
  EXPECT_EQ(r.matched_concepts.size(), 3u);
}

TEST(KnowledgeIndexTest, MatchesBruteForceOracle) {
  std::mt19937_64 rng(20);
  Stemmer stemmer = DefaultStemmer();
  int with_hits = 0;
  for (int trial = 0; trial < 300; ++trial) {
    testing::RetrievalCase c = testing::MakeRetrievalCase(rng);
    RetrievedSet got = c.index.Retrieve(c.message, stemmer);
    RetrievedSet want = testing::BruteForceRetrieve(c.index, c.message, stemmer);
    ASSERT_EQ(got.assertion_ids, want.assertion_ids) << "trial " << trial;
    ASSERT_EQ(got.matched_concepts, want.matched_concepts) << "trial " << trial;
    if (!got.empty()) ++with_hits;
  }
  EXPECT_GT(with_hits, 150);
}

TEST(KnowledgeIndexTest, RetrievalIsOrderIndependentAsASet) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    testing::RetrievalCase c = testing::MakeRetrievalCase(rng);
    RetrievedSet r = c.index.Retrieve(c.message);
    for (AssertionId id : r.assertion_ids) {
      ASSERT_LT(id, c.index.num_assertions());
    }
    std::vector<AssertionId> sorted = r.assertion_ids;
    std::sort(sorted.begin(), sorted.end());
    EXPECT_EQ(std::adjacent_find(sorted.begin(), sorted.end()), sorted.end());
  }
}

TEST(KnowledgeIndexTest, SaveLoadRoundTrips) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    testing::RetrievalCase c = testing::MakeRetrievalCase(rng);
    std::stringstream buffer;
    c.index.Save(buffer);
    KnowledgeIndex loaded = KnowledgeIndex::Load(buffer);
    EXPECT_EQ(loaded, c.index);
  }
}

TEST(KnowledgeIndexTest, TruncatedFileFailsToLoad) {
  KnowledgeIndex index = KnowledgeIndex::Build(
      {{"dog", "IsA", "pet"}}, VocabOf({"dog", "pet"}), 5, DefaultStopwords());
  std::stringstream buffer;
  index.Save(buffer);
  std::string text = buffer.str();
  std::istringstream cut(text.substr(0, text.size() / 2));
  EXPECT_THROW(KnowledgeIndex::Load(cut), std::runtime_error);
}

TEST(IndexStatsTest, UniformConcepts) {
  KnowledgeIndex index = KnowledgeIndex::Build(
      {{"dog", "IsA", "the"}, {"cat", "IsA", "the"}},
      VocabOf({"dog", "cat", "the"}), 5, {"the"});
  IndexStats stats = ComputeIndexStats(index, {}, DefaultStemmer());
  EXPECT_EQ(stats.concepts, 2u);
  EXPECT_DOUBLE_EQ(stats.mean_assertions_per_concept, 1.0);
  EXPECT_EQ(stats.single_assertion_concepts, 2u);
}

TEST(IndexStatsTest, CountsMessageHits) {
  // Three keys listing 2, 3 and 5 disjoint assertions.
  std::vector<Assertion> assertions;
  Tokens words = {"k", "the"};
  auto add = [&](const std::string &key, int n) {
    for (int i = 0; i < n; ++i) {
      std::string other = "the";
      assertions.push_back({key, "RelatedTo", other, 1.0});
    }
    words.push_back(key);
  };
  add("alpha", 2);
  add("beta", 3);
  add("gamma", 5);
  KnowledgeIndex index =
      KnowledgeIndex::Build(assertions, VocabOf(words), 5, {"the"});
  IndexStats stats =
      ComputeIndexStats(index, {{"alpha", "beta", "gamma"}}, DefaultStemmer());
  EXPECT_EQ(stats.messages, 1u);
  EXPECT_DOUBLE_EQ(stats.mean_matched_concepts, 3.0);
  EXPECT_DOUBLE_EQ(stats.mean_retrieved, 10.0);
  EXPECT_EQ(stats.messages_without_concepts, 0u);
}

}  // namespace
}  // namespace kgdial
