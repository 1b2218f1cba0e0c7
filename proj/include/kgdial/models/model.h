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

#ifndef KGDIAL_MODELS_MODEL_H_
#define KGDIAL_MODELS_MODEL_H_

#include <cstdint>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kgdial/knowledge/knowledge_index.h"
#include "kgdial/models/scorers.h"
#include "kgdial/nn/checkpoint.h"
#include "kgdial/nn/lstm.h"
#include "kgdial/nn/parameter_store.h"
#include "kgdial/nn/tape.h"
#include "kgdial/text/vocabulary.h"

namespace kgdial {

enum class ModelKind { kTfIdf, kBow, kBowKnowledge, kMemNet, kDualLstm, kTriLstm };

std::string_view ModelKindName(ModelKind kind);
std::optional<ModelKind> ParseModelKind(std::string_view name);
// True for the models that read the retrieved assertions.
bool UsesKnowledge(ModelKind kind);
// True for the models with an outer sigmoid.
bool HasSigmoid(ModelKind kind);

struct ModelConfig {
  ModelKind kind = ModelKind::kTriLstm;
  std::size_t embedding_dim = 100;
  std::size_t hidden_dim = 256;
  std::size_t vocab_size = 0;
  bool tie_message_response_weights = true;
  bool separate_assertion_encoder = true;
  std::uint64_t vocab_fingerprint = 0;

  // Canonical "key=value" lines in a fixed order; hashed into checkpoints.
  std::string ToText() const;
  static ModelConfig FromText(std::string_view text);
  std::uint64_t Hash() const;
  void Validate() const;

  bool operator==(const ModelConfig &other) const = default;
};

// Linearized assertions attached to a message, as token ids.
struct Memory {
  std::vector<AssertionId> ids;
  std::vector<std::vector<int>> sequences;

  std::size_t size() const { return ids.size(); }
  bool empty() const { return ids.empty(); }
};

// Linearizes every retrieved assertion; keeps at most `max_entries`
// (0 = all) in retrieval order.
Memory BuildMemory(const KnowledgeIndex &index, const Vocabulary &vocab,
                   const RetrievedSet &retrieved, std::size_t max_entries = 0);

struct ScoredCandidate {
  std::size_t index = 0;
  double score = 0;
  // Ranking key; equals score for raw scorers and the pre-sigmoid value
  // for sigmoid models.
  double logit = 0;
  std::optional<AssertionId> activated_assertion;
};

enum class EncoderRole { kMessage, kResponse, kAssertion };

// One of the six response scorers together with its parameters. A Model is
// immutable for scoring; concurrent ScoreCandidates() calls are safe.
class Model {
 public:
  Model(ModelConfig config, nn::ParameterStore params);

  // Fresh parameters: embeddings and weights uniform(-init_range,
  // init_range), LSTM forget bias 1. TF-IDF starts with unit idf.
  static Model Initialize(const ModelConfig &config, std::uint64_t seed,
                          double init_range = 0.08);
  // Refuses a checkpoint whose kind differs from `expected` or whose
  // parameters do not match the stored config.
  static Model FromCheckpoint(const nn::Checkpoint &checkpoint,
                              std::optional<ModelKind> expected = std::nullopt);
  static Model LoadFile(const std::string &path,
                        std::optional<ModelKind> expected = std::nullopt);
  void SaveFile(const std::string &path) const;

  const ModelConfig &config() const { return config_; }
  ModelKind kind() const { return config_.kind; }
  const nn::ParameterStore &params() const { return params_; }
  nn::ParameterStore &mutable_params() { return params_; }
  bool trainable() const { return config_.kind != ModelKind::kTfIdf; }
  // "probability" for sigmoid models, "raw" otherwise.
  std::string_view score_kind() const;

  // Sets the TF-IDF document frequencies from a corpus of id sequences.
  void FitIdf(const std::vector<std::vector<int>> &documents, int unk_id);

  // Utterance or assertion embedding: last LSTM state, or bag of words.
  Embedding Encode(std::span<const int> ids, EncoderRole role) const;

  // Scores every candidate against the message and its memory; result is
  // in candidate order, unsorted.
  std::vector<ScoredCandidate> ScoreCandidates(
      std::span<const int> message, const Memory &memory,
      const std::vector<std::vector<int>> &candidates) const;

  // Recorded forward pass producing the ranking logit for one pair.
  nn::Var Logit(nn::Tape &tape, std::span<const int> message,
                const Memory &memory, std::span<const int> response) const;
  // Binary cross-entropy of the pair against `label`.
  nn::Var Loss(nn::Tape &tape, std::span<const int> message,
               const Memory &memory, std::span<const int> response,
               int label) const;

 private:
  void ResolveParameters();
  const nn::LstmParams &LstmFor(EncoderRole role) const;
  nn::Var EncodeOnTape(nn::Tape &tape, std::span<const int> ids,
                       EncoderRole role) const;

  ModelConfig config_;
  nn::ParameterStore params_;
  std::optional<nn::ParamId> embedding_;
  std::optional<nn::ParamId> bilinear_;
  std::optional<nn::ParamId> assertion_bilinear_;
  std::optional<nn::ParamId> idf_;
  nn::LstmParams message_lstm_;
  nn::LstmParams response_lstm_;
  nn::LstmParams assertion_lstm_;
};

// Overwrites rows of the embedding table from a whitespace-separated
// "token v1 ... vE" file; returns the number of vocabulary rows filled.
// Lines of the wrong width are skipped.
std::size_t LoadPretrainedEmbeddings(std::istream &in, const Vocabulary &vocab,
                                     nn::Array &table);

// Candidates by descending logit, ties by ascending index, NaN last. Throws
// std::invalid_argument on an empty list.
std::vector<ScoredCandidate> Rank(std::vector<ScoredCandidate> scored);

}  // namespace kgdial

#endif  // KGDIAL_MODELS_MODEL_H_
