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
#include <string>
#include <thread>
#include <vector>

#include <gtest/gtest.h>

#include "httplib.h"
#include "json.hpp"
#include "kgdial/service/service.h"
#include "kgdial/text/normalize.h"
#include "kgdial/train/kernels.h"

namespace kgdial {
namespace {

using Json = nlohmann::json;

const std::vector<std::string> kCandidates = {
    "the beach is lovely this time of year", "i prefer the mountains",
    "tourism keeps the islands busy",        "my cat sleeps all day",
    "shoes and a dress sound good",          "learning a language is fun",
    "paint the walls blue",                  "sounds like a plan",
    "see you at the wedding",                "good luck with the move"};

class ServiceTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    std::vector<std::vector<std::string>> corpus;
    for (const auto &c : kCandidates) corpus.push_back(NormalizeAndTokenize(c));
    corpus.push_back(NormalizeAndTokenize("i love hawaii tourism household color"));
    Vocabulary vocab = Vocabulary::Build(corpus, 1, DefaultRelations());
    KnowledgeIndex index = KnowledgeIndex::Build(
        {{"hawaii", "UsedFor", "tourism"}, {"paint", "RelatedTo", "household_color"}},
        vocab, 5, DefaultStopwords());
    ModelConfig config;
    config.embedding_dim = 8;
    config.hidden_dim = 8;
    config.vocab_size = vocab.size();
    config.vocab_fingerprint = vocab.Fingerprint();
    config.kind = ModelKind::kTriLstm;
    Model tri = Model::Initialize(config, 1, 0.3);
    config.kind = ModelKind::kDualLstm;
    Model dual = Model::Initialize(config, 1, 0.3);
    config.kind = ModelKind::kBow;
    Model bow = Model::Initialize(config, 1, 0.3);
    service_ = new RankService(vocab, index,
                               {{"tri", tri}, {"dual", dual}, {"bow", bow}});
  }
  static void TearDownTestSuite() {
    delete service_;
    service_ = nullptr;
  }

  static std::string RankBody(const std::string &message, const std::string &model,
                              const std::vector<std::string> &candidates = kCandidates) {
    return Json{{"message", message}, {"candidates", candidates}, {"model", model}}
        .dump();
  }

  static RankService *service_;
};

RankService *ServiceTest::service_ = nullptr;

TEST_F(ServiceTest, Health) {
  HttpReply r = service_->Health();
  EXPECT_EQ(r.status, 200);
  EXPECT_EQ(Json::parse(r.body), Json({{"status", "ok"}}));
}

TEST_F(ServiceTest, ConceptsForHawaii) {
  HttpReply r = service_->Concepts("i love hawaii");
  ASSERT_EQ(r.status, 200);
  Json j = Json::parse(r.body);
  ASSERT_EQ(j["concepts"].size(), 1u);
  EXPECT_EQ(j["concepts"][0]["concept"], "hawaii");
  EXPECT_EQ(j["concepts"][0]["assertions"], 1);
  EXPECT_EQ(j["assertion_count"], 1);
  EXPECT_EQ(service_->Concepts(std::nullopt).status, 400);
}

TEST_F(ServiceTest, AssertionsEndpoint) {
  HttpReply r = service_->Assertions("paint");
  ASSERT_EQ(r.status, 200);
  Json j = Json::parse(r.body);
  ASSERT_EQ(j["assertions"].size(), 1u);
  EXPECT_EQ(j["assertions"][0]["text"], "(paint, RelatedTo, household_color)");
  EXPECT_EQ(service_->Assertions("zebra").status, 404);
}

TEST_F(ServiceTest, ModelsEndpoint) {
  Json j = Json::parse(service_->Models().body);
  ASSERT_EQ(j["models"].size(), 3u);
  EXPECT_EQ(j["models"][0]["id"], "tri");
  EXPECT_EQ(j["models"][0]["kind"], "tri_lstm");
  EXPECT_EQ(j["models"][0]["config_hash"].get<std::string>().size(), 16u);
  EXPECT_EQ(j["models"][2]["score_kind"], "raw");
}

TEST_F(ServiceTest, RankReturnsPermutation) {
  HttpReply r = service_->Rank(RankBody("i love hawaii", "tri"));
  ASSERT_EQ(r.status, 200) << r.body;
  Json j = Json::parse(r.body);
  EXPECT_EQ(j["model"], "tri");
  EXPECT_EQ(j["score_kind"], "probability");
  EXPECT_EQ(j["assertion_count"], 1);
  ASSERT_EQ(j["candidates"].size(), 10u);
  std::vector<std::size_t> indices;
  double previous = 2.0;
  for (std::size_t r_i = 0; r_i < 10; ++r_i) {
    const Json &c = j["candidates"][r_i];
    indices.push_back(c["index"]);
    EXPECT_EQ(c["rank"], r_i + 1);
    EXPECT_EQ(c["text"], kCandidates[c["index"].get<std::size_t>()]);
    EXPECT_LE(c["score"].get<double>(), previous);
    previous = c["score"];
    ASSERT_TRUE(c.contains("activated_assertion"));
    EXPECT_EQ(c["activated_assertion"]["text"], "(hawaii, UsedFor, tourism)");
  }
  std::sort(indices.begin(), indices.end());
  for (std::size_t i = 0; i < 10; ++i) EXPECT_EQ(indices[i], i);
}

TEST_F(ServiceTest, NonKnowledgeModelHasNoActivation) {
  Json j = Json::parse(service_->Rank(RankBody("hello there", "dual")).body);
  EXPECT_FALSE(j["candidates"][0].contains("activated_assertion"));
  EXPECT_GT(j["candidates"][0]["score"].get<double>(), 0.0);
  EXPECT_LT(j["candidates"][0]["score"].get<double>(), 1.0);
}

TEST_F(ServiceTest, RankErrors) {
  EXPECT_EQ(service_->Rank("{not json").status, 400);
  EXPECT_EQ(service_->Rank("[]").status, 400);
  EXPECT_EQ(service_->Rank(R"({"candidates":["a"],"model":"tri"})").status, 400);
  EXPECT_EQ(service_->Rank(R"({"message":"x","candidates":[],"model":"tri"})").status,
            400);
  EXPECT_EQ(service_->Rank(R"({"message":"x","candidates":[1],"model":"tri"})").status,
            400);
  std::vector<std::string> many(kMaxRankCandidates + 1, "a");
  EXPECT_EQ(service_->Rank(RankBody("x", "tri", many)).status, 400);
  HttpReply unknown = service_->Rank(RankBody("x", "gru"));
  EXPECT_EQ(unknown.status, 404);
  Json err = Json::parse(unknown.body);
  EXPECT_EQ(err["error"]["status"], 404);
  EXPECT_TRUE(err["error"]["message"].is_string());
}

TEST_F(ServiceTest, ConcurrentRanksAreDeterministic) {
  auto strip = [](const std::string &body) {
    Json j = Json::parse(body);
    j.erase("latency_ms");
    return j.dump();
  };
  const std::string reference = strip(service_->Rank(RankBody("i love hawaii", "tri")).body);
  std::vector<std::string> results(32);
  std::vector<std::thread> threads;
  for (std::size_t t = 0; t < 4; ++t) {
    threads.emplace_back([&, t] {
      for (std::size_t i = t; i < results.size(); i += 4) {
        results[i] = strip(service_->Rank(RankBody("i love hawaii", "tri")).body);
      }
    });
  }
  for (auto &th : threads) th.join();
  for (const std::string &r : results) EXPECT_EQ(r, reference);
}

TEST_F(ServiceTest, ServesOverHttp) {
  HttpServer server(*service_);
  int port = server.Bind("127.0.0.1", 0);
  ASSERT_GT(port, 0);
  std::thread listener([&] { server.Listen(); });
  httplib::Client client("127.0.0.1", port);
  client.set_connection_timeout(5);

  auto health = client.Get("/health");
  ASSERT_TRUE(health);
  EXPECT_EQ(health->status, 200);
  EXPECT_EQ(Json::parse(health->body)["status"], "ok");

  auto concepts = client.Get("/concepts?text=i+love+hawaii");
  ASSERT_TRUE(concepts);
  EXPECT_EQ(Json::parse(concepts->body)["concepts"][0]["concept"], "hawaii");

  auto ranked = client.Post("/rank", RankBody("paint my room", "tri"),
                            "application/json");
  ASSERT_TRUE(ranked);
  EXPECT_EQ(ranked->status, 200);
  EXPECT_EQ(Json::parse(ranked->body)["candidates"].size(), 10u);

  auto bad = client.Post("/rank", "oops", "application/json");
  ASSERT_TRUE(bad);
  EXPECT_EQ(bad->status, 400);

  auto missing = client.Get("/nowhere");
  ASSERT_TRUE(missing);
  EXPECT_EQ(missing->status, 404);
  EXPECT_TRUE(Json::parse(missing->body).contains("error"));

  server.Stop();
  listener.join();
}

TEST_F(ServiceTest, BindFailureThrows) {
  HttpServer server(*service_);
  EXPECT_THROW(server.Bind("256.0.0.1", 8080), std::runtime_error);
  EXPECT_THROW(server.Bind("256.0.0.1", 0), std::runtime_error);
}

TEST(RankServiceTest, RejectsVocabularyMismatch) {
  Vocabulary vocab = Vocabulary::Build({{"a", "b"}}, 1, {});
  ModelConfig config;
  config.kind = ModelKind::kBow;
  config.embedding_dim = 2;
  config.vocab_size = 99;
  EXPECT_THROW(RankService(vocab, KnowledgeIndex{},
                           {{"m", Model::Initialize(config, 1)}}),
               std::invalid_argument);
}

}  // namespace
}  // namespace kgdial
