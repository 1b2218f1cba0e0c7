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

#include <cmath>
#include <filesystem>
#include <limits>
#include <string>
#include <vector>

#include <unistd.h>

#include <gtest/gtest.h>

#include "kgdial/models/gradient_fixture.h"
#include "kgdial/text/normalize.h"
#include "kgdial/train/case_report.h"
#include "kgdial/train/dataset.h"
#include "kgdial/train/evaluate.h"
#include "kgdial/train/kernels.h"
#include "kgdial/train/synth_corpus.h"
#include "kgdial/train/trainer.h"

namespace kgdial {
namespace {

// Gives the ground truth the top score in every instance.
class OracleScorer : public CandidateScorer {
 public:
  std::string name() const override { return "oracle"; }
  std::vector<ScoredCandidate> Score(const EvalInstance &instance) const override {
    std::vector<ScoredCandidate> out;
    for (std::size_t i = 0; i < instance.candidates.size(); ++i) {
      double s = i == instance.ground_truth_slot ? 1.0 : 0.0;
      out.push_back({i, s, s, std::nullopt});
    }
    return out;
  }
};

// Gives every candidate the same score.
class FlatScorer : public CandidateScorer {
 public:
  std::string name() const override { return "flat"; }
  std::vector<ScoredCandidate> Score(const EvalInstance &instance) const override {
    std::vector<ScoredCandidate> out;
    for (std::size_t i = 0; i < instance.candidates.size(); ++i) {
      out.push_back({i, 0.0, 0.0, std::nullopt});
    }
    return out;
  }
};

struct SynthSetup {
  SynthCorpus corpus;
  Vocabulary vocab;
  KnowledgeIndex index;
  std::vector<EncodedPair> encoded;
};

SynthSetup MakeSynth(std::size_t n_pairs, double noise, std::uint64_t seed) {
  SynthConfig config;
  config.n_pairs = n_pairs;
  config.n_concepts = 30;
  config.filler_vocab = 60;
  config.message_fillers = 2;
  config.response_fillers = 2;
  config.noise_rate = noise;
  config.seed = seed;
  SynthSetup s;
  s.corpus = GenerateSynthCorpus(config);
  std::vector<std::vector<std::string>> text;
  for (const auto &p : s.corpus.pairs) {
    text.push_back(NormalizeAndTokenize(p.message));
    text.push_back(NormalizeAndTokenize(p.response));
  }
  for (const auto &a : s.corpus.assertions) text.push_back({a.concept1, a.concept2});
  s.vocab = Vocabulary::Build(text, 1, DefaultRelations());
  s.index = KnowledgeIndex::Build(s.corpus.assertions, s.vocab, 5, DefaultStopwords());
  s.encoded = EncodePairs(s.corpus.pairs, s.vocab);
  return s;
}

std::vector<EvalInstance> SynthInstances(const SynthSetup &s, std::uint64_t seed) {
  return MakeCandidateSets(s.encoded, kDefaultDistractors, seed, &s.index, s.vocab);
}

TEST(RecallTest, KEqualsCandidateCountIsOne) {
  SynthSetup s = MakeSynth(200, 0.15, 1);
  auto instances = SynthInstances(s, 2);
  EXPECT_EQ(RecallAtK(RandomScorer(3), instances, 10), 1.0);
  EXPECT_EQ(RecallAtK(FlatScorer(), instances, 10), 1.0);
}

TEST(RecallTest, PerfectScorer) {
  SynthSetup s = MakeSynth(200, 0.15, 1);
  EXPECT_EQ(RecallAtK(OracleScorer(), SynthInstances(s, 2), 1), 1.0);
}

TEST(RecallTest, KOutOfRange) {
  SynthSetup s = MakeSynth(100, 0.15, 1);
  auto instances = SynthInstances(s, 2);
  EXPECT_THROW(RecallAtK(OracleScorer(), instances, 0), std::invalid_argument);
  EXPECT_THROW(RecallAtK(OracleScorer(), instances, 11), std::invalid_argument);
  EXPECT_THROW(RecallAtK(OracleScorer(), {}, 1), std::invalid_argument);
}

TEST(RecallTest, MonotoneInK) {
  SynthSetup s = MakeSynth(300, 0.15, 4);
  RecallReport r = EvaluateRecall(RandomScorer(5), SynthInstances(s, 6),
                                  {1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
  for (std::size_t k = 2; k <= 10; ++k) {
    EXPECT_GE(r.recall[k], r.recall[k - 1]);
  }
}

TEST(RecallTest, FlatScoresTieBreakByIndex) {
  SynthSetup s = MakeSynth(300, 0.15, 4);
  auto instances = SynthInstances(s, 6);
  std::size_t first_slot = 0;
  for (const auto &inst : instances) first_slot += inst.ground_truth_slot == 0;
  EXPECT_DOUBLE_EQ(RecallAtK(FlatScorer(), instances, 1),
                   static_cast<double>(first_slot) / instances.size());
}

TEST(RecallTest, RandomScorerCalibration) {
  SynthConfig config;
  config.n_pairs = 10000;
  config.message_fillers = 2;
  config.response_fillers = 2;
  SynthCorpus corpus = GenerateSynthCorpus(config);
  std::vector<std::vector<std::string>> text;
  for (const auto &p : corpus.pairs) text.push_back(NormalizeAndTokenize(p.response));
  Vocabulary vocab = Vocabulary::Build(text, 1, {});
  auto instances = MakeCandidateSets(EncodePairs(corpus.pairs, vocab), 9, 7,
                                     nullptr, vocab);
  RecallReport r = EvaluateRecall(RandomScorer(1), instances, {1, 2, 5, 10});
  EXPECT_NEAR(r.recall[1], 0.10, 0.01);
  EXPECT_NEAR(r.recall[2], 0.20, 0.012);
  EXPECT_NEAR(r.recall[5], 0.50, 0.015);
  EXPECT_EQ(r.recall[10], 1.0);
}

TEST(RecallTest, AssertionLookupSolvesNoiseFreeCorpus) {
  SynthSetup s = MakeSynth(400, 0.0, 8);
  EXPECT_EQ(RecallAtK(AssertionLookupScorer(s.index), SynthInstances(s, 9), 1), 1.0);
}

TEST(RecallTest, MetricsJsonLine) {
  std::string line = ToJsonLine({"tri_lstm", 1, 0.25, 1000, 7, 0xabc});
  EXPECT_EQ(line,
            "{\"model\":\"tri_lstm\",\"k\":1,\"recall\":0.25,\"instances\":1000,"
            "\"seed\":7,\"config_hash\":\"0000000000000abc\"}");
}

TEST(KernelsTest, ForEachIndexRethrowsLowestIndex) {
  for (Execution mode : {Execution::kSerial, Execution::kParallel}) {
    try {
      ForEachIndex(50, mode, [](std::size_t i) {
        if (i % 7 == 3) throw std::runtime_error(std::to_string(i));
      });
      FAIL() << "expected an exception";
    } catch (const std::runtime_error &e) {
      EXPECT_STREQ(e.what(), "3");
    }
  }
}

TEST(KernelsTest, SerialAndParallelGradientsAgreeBitwise) {
  for (ModelKind kind : {ModelKind::kMemNet, ModelKind::kTriLstm}) {
    GradientFixtureOptions options;
    options.examples = 24;
    GradientFixture f = MakeGradientFixture(kind, 3, options);
    std::vector<const TrainingExample *> batch;
    for (const auto &ex : f.examples) batch.push_back(&ex);
    const nn::ParameterStore &store = f.model.params();
    GradientWorkspace serial_ws(store, batch.size());
    GradientWorkspace parallel_ws(store, batch.size());
    nn::Gradients serial(store), parallel(store);
    double a = serial_ws.BatchGradient(f.model, batch, serial, Execution::kSerial);
    double b = parallel_ws.BatchGradient(f.model, batch, parallel,
                                         Execution::kParallel);
    EXPECT_EQ(a, b);
    for (nn::ParamId id = 0; id < store.size(); ++id) {
      EXPECT_TRUE(nn::BitwiseEqual(serial[id], parallel[id])) << store.name(id);
    }
  }
}

TEST(KernelsTest, SerialAndParallelScoresAgree) {
  SynthSetup s = MakeSynth(150, 0.15, 2);
  auto instances = SynthInstances(s, 3);
  ModelConfig config;
  config.kind = ModelKind::kTriLstm;
  config.embedding_dim = 8;
  config.hidden_dim = 8;
  config.vocab_size = s.vocab.size();
  Model model = Model::Initialize(config, 4, 0.3);
  auto a = ScoreInstances(model, instances, Execution::kSerial);
  auto b = ScoreInstances(model, instances, Execution::kParallel);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t c = 0; c < a[i].size(); ++c) {
      EXPECT_EQ(a[i][c].logit, b[i][c].logit);
      EXPECT_EQ(a[i][c].activated_assertion, b[i][c].activated_assertion);
    }
  }
}

class TrainerTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("kgdial_train_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir_);
    GradientFixtureOptions options;
    options.examples = 32;
    options.vocab_size = 40;
    GradientFixture fixture = MakeGradientFixture(ModelKind::kDualLstm, 9, options);
    examples_ = fixture.examples;
    config_ = fixture.model.config();
    config_.embedding_dim = 8;
    config_.hidden_dim = 16;
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  TrainConfig Desk() const {
    TrainConfig t;
    t.batch_size = 32;
    t.learning_rate = 0.5;
    t.epochs = 50;
    t.seed = 3;
    t.init_range = 0.3;
    return t;
  }

  std::filesystem::path dir_;
  std::vector<TrainingExample> examples_;
  ModelConfig config_;
};

TEST_F(TrainerTest, LossDecreasesOnSmallFixture) {
  TrainResult r = Train(config_, examples_, Desk());
  ASSERT_EQ(r.trace.size(), 50u);
  int decreases = 0;
  for (std::size_t e = 1; e < r.trace.size(); ++e) {
    decreases += r.trace[e].mean_loss < r.trace[e - 1].mean_loss;
  }
  EXPECT_GE(decreases, 45) << FormatLossTrace(r.trace);
  EXPECT_LT(r.trace.back().mean_loss, r.trace.front().mean_loss);
}

TEST_F(TrainerTest, SameSeedSameTrace) {
  TrainConfig t = Desk();
  t.epochs = 10;
  t.batch_size = 8;
  TrainResult a = Train(config_, examples_, t);
  t.execution = Execution::kSerial;
  TrainResult b = Train(config_, examples_, t);
  EXPECT_EQ(FormatLossTrace(a.trace), FormatLossTrace(b.trace));
  EXPECT_TRUE(nn::BitwiseEqual(a.model.params(), b.model.params()));
}

TEST_F(TrainerTest, ZeroLearningRateKeepsParameters) {
  TrainConfig t = Desk();
  t.epochs = 5;
  t.learning_rate = 0;
  TrainResult r = Train(config_, examples_, t);
  Model initial = Model::Initialize(config_, t.seed, t.init_range);
  EXPECT_TRUE(nn::BitwiseEqual(r.model.params(), initial.params()));
  // Shuffled batches sum in a different order each epoch.
  for (const EpochRecord &e : r.trace) {
    EXPECT_NEAR(e.mean_loss, r.trace[0].mean_loss, 1e-14);
  }
}

TEST_F(TrainerTest, NonFiniteLossAborts) {
  ModelConfig bow = config_;
  bow.kind = ModelKind::kBow;
  TrainConfig t = Desk();
  t.learning_rate = 1e300;
  t.batch_size = 4;
  t.checkpoint_path = (dir_ / "bow.ckpt").string();
  TrainResult r = Train(bow, examples_, t);
  EXPECT_TRUE(r.aborted);
  EXPECT_FALSE(r.abort_reason.empty());
  for (nn::ParamId id = 0; id < r.model.params().size(); ++id) {
    EXPECT_TRUE(r.model.params().value(id).AllFinite());
  }
}

TEST_F(TrainerTest, WritesBestAndLastCheckpoints) {
  SynthSetup s = MakeSynth(120, 0.15, 5);
  auto triples = BuildTrainingSet(s.encoded, 1);
  auto examples = PrepareExamples(triples, s.vocab, &s.index);
  auto valid = SynthInstances(s, 6);
  ModelConfig config;
  config.kind = ModelKind::kTriLstm;
  config.embedding_dim = 8;
  config.hidden_dim = 8;
  config.vocab_size = s.vocab.size();
  TrainConfig t = Desk();
  t.epochs = 6;
  t.patience = 2;
  t.batch_size = 16;
  t.learning_rate = 0.01;
  t.checkpoint_path = (dir_ / "tri.ckpt").string();
  TrainResult r = Train(config, examples, t, &valid);
  ASSERT_FALSE(r.trace.empty());
  EXPECT_TRUE(std::filesystem::exists(t.checkpoint_path));
  EXPECT_TRUE(std::filesystem::exists(t.checkpoint_path + ".last"));
  EXPECT_GE(r.best_epoch, 1u);
  Model best = Model::LoadFile(t.checkpoint_path, ModelKind::kTriLstm);
  EXPECT_TRUE(nn::BitwiseEqual(best.params(), r.model.params()));
  double best_recall = 0;
  for (const EpochRecord &e : r.trace) {
    ASSERT_TRUE(e.valid_recall_at_1.has_value());
    best_recall = std::max(best_recall, *e.valid_recall_at_1);
  }
  EXPECT_EQ(*r.trace[r.best_epoch - 1].valid_recall_at_1, best_recall);
  if (r.stopped_early) {
    EXPECT_LT(r.trace.size(), 6u);
  }
}

TEST_F(TrainerTest, TfIdfFitsWithoutGradientSteps) {
  SynthSetup s = MakeSynth(100, 0.15, 5);
  auto examples = PrepareExamples(BuildTrainingSet(s.encoded, 1), s.vocab, nullptr);
  ModelConfig config;
  config.kind = ModelKind::kTfIdf;
  config.vocab_size = s.vocab.size();
  TrainResult r = Train(config, examples, Desk(), nullptr, &s.vocab);
  const nn::Array &idf = r.model.params()["idf"];
  EXPECT_EQ(idf[s.vocab.unk_id()], 0.0);
  EXPECT_GT(idf[s.vocab.IdOf(s.corpus.pairs[0].group)], 1.0);
}

TEST(TrainConfigTest, Validation) {
  TrainConfig t;
  EXPECT_NO_THROW(t.Validate());
  t.learning_rate = -1;
  EXPECT_THROW(t.Validate(), std::invalid_argument);
  t.learning_rate = 0.1;
  t.batch_size = 0;
  EXPECT_THROW(t.Validate(), std::invalid_argument);
}

TEST(LossTraceTest, Format) {
  std::vector<EpochRecord> trace = {{1, 0.5, std::nullopt}, {2, 0.25, 0.125}};
  EXPECT_EQ(FormatLossTrace(trace), "1\t0.5\t-\n2\t0.25\t0.125\n");
}

class CaseReportTest : public ::testing::Test {
 protected:
  CaseReportTest() {
    vocab_ = Vocabulary::Build({NormalizeAndTokenize(
                                   "did yoga help ? the language sounds "
                                   "interesting exercise unrelated reply")},
                               1, DefaultRelations());
    index_ = KnowledgeIndex::Build({{"yoga", "IsA", "exercise"}}, vocab_, 5,
                                   DefaultStopwords());
  }

  EvalInstance Instance(const std::string &message) const {
    EvalInstance inst;
    inst.id = "case";
    inst.message = vocab_.Encode(NormalizeAndTokenize(message));
    inst.candidates = {vocab_.Encode(NormalizeAndTokenize("the language sounds interesting")),
                       vocab_.Encode(NormalizeAndTokenize("did yoga help ?")),
                       vocab_.Encode(NormalizeAndTokenize("unrelated reply"))};
    inst.ground_truth_slot = 1;
    AttachRetrieval(inst, index_, vocab_);
    return inst;
  }

  static std::vector<ScoredCandidate> Pick(std::size_t slot,
                                           std::optional<AssertionId> activated) {
    std::vector<ScoredCandidate> out;
    for (std::size_t i = 0; i < 3; ++i) {
      double s = i == slot ? 0.9 : 0.1;
      out.push_back({i, s, s, activated});
    }
    return out;
  }

  Vocabulary vocab_;
  KnowledgeIndex index_;
};

TEST_F(CaseReportTest, KnowledgeModelCorrectBaselineWrong) {
  EvalInstance inst = Instance("i tried yoga");
  CaseRecord r = MakeCaseRecord(inst, index_, "dual_lstm", Pick(0, std::nullopt),
                                "tri_lstm", Pick(1, AssertionId{0}));
  EXPECT_FALSE(r.baseline.correct);
  EXPECT_TRUE(r.knowledge.correct);
  EXPECT_EQ(r.baseline.response, "the language sounds interesting");
  EXPECT_EQ(r.knowledge.response, "did yoga help ?");
  ASSERT_TRUE(r.knowledge.activated.has_value());
  EXPECT_EQ(*r.knowledge.activated, index_.assertion(0));
  EXPECT_EQ(r.assertion_count, 1u);
  EXPECT_EQ(r.matched_concepts, std::vector<std::string>{"yoga"});
  std::string table = RenderCaseTable({r});
  EXPECT_NE(table.find("dual_lstm: the language sounds interesting\n"),
            std::string::npos);
  EXPECT_NE(table.find("tri_lstm: did yoga help ? [correct]"), std::string::npos);
  EXPECT_NE(table.find("activated assertion: yoga, IsA, exercise (1)"),
            std::string::npos);
  auto j = ToJson(r);
  EXPECT_EQ(j["knowledge"]["activated_assertion"][2], "exercise");
  EXPECT_FALSE(j["baseline"].contains("activated_assertion"));
}

TEST_F(CaseReportTest, EmptyMemoryHasNoActivation) {
  EvalInstance inst = Instance("hello there");
  CaseRecord r = MakeCaseRecord(inst, index_, "dual_lstm", Pick(1, std::nullopt),
                                "tri_lstm", Pick(1, std::nullopt));
  EXPECT_EQ(r.assertion_count, 0u);
  EXPECT_FALSE(r.knowledge.activated.has_value());
  EXPECT_TRUE(r.baseline.correct);
  EXPECT_TRUE(r.knowledge.correct);
  EXPECT_FALSE(ToJson(r)["knowledge"].contains("activated_assertion"));
  EXPECT_NE(RenderCaseTable({r}).find("activated assertion: - (0)"),
            std::string::npos);
}

TEST_F(CaseReportTest, RejectsSwappedModels) {
  ModelConfig c;
  c.embedding_dim = 4;
  c.hidden_dim = 4;
  c.vocab_size = vocab_.size();
  c.kind = ModelKind::kDualLstm;
  Model dual = Model::Initialize(c, 1);
  c.kind = ModelKind::kTriLstm;
  Model tri = Model::Initialize(c, 1);
  EvalInstance inst = Instance("i tried yoga");
  EXPECT_NO_THROW(CaseReport(dual, tri, inst, index_));
  EXPECT_THROW(CaseReport(tri, dual, inst, index_), std::invalid_argument);
  CaseRecord r = CaseReport(dual, tri, inst, index_);
  ASSERT_TRUE(r.knowledge.activated.has_value());
  EXPECT_EQ(*r.knowledge.activated, index_.assertion(0));
}

}  // namespace
}  // namespace kgdial
