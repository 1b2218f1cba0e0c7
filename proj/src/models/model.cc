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

#include "kgdial/models/model.h"

#include <charconv>
#include <random>
#include <sstream>
#include <stdexcept>

#include "kgdial/nn/functions.h"
#include "kgdial/util/hash.h"

namespace kgdial {

namespace {

constexpr std::pair<ModelKind, std::string_view> kKindNames[] = {
    {ModelKind::kTfIdf, "tfidf"},
    {ModelKind::kBow, "bow"},
    {ModelKind::kBowKnowledge, "bow_knowledge"},
    {ModelKind::kMemNet, "memnet"},
    {ModelKind::kDualLstm, "dual_lstm"},
    {ModelKind::kTriLstm, "tri_lstm"},
};

bool IsLstm(ModelKind kind) {
  return kind == ModelKind::kDualLstm || kind == ModelKind::kTriLstm;
}

std::uint64_t ParseUnsigned(std::string_view key, std::string_view value,
                            int base = 10) {
  std::uint64_t out = 0;
  auto [ptr, ec] =
      std::from_chars(value.data(), value.data() + value.size(), out, base);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw std::invalid_argument("model config: bad value for " +
                                std::string(key) + ": " + std::string(value));
  }
  return out;
}

bool ParseBool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw std::invalid_argument("model config: bad boolean for " +
                              std::string(key));
}

void FillUniform(nn::Array &array, std::mt19937_64 &rng, double range) {
  std::uniform_real_distribution<double> uniform(-range, range);
  for (double &v : array.data()) v = uniform(rng);
}

void CheckIds(std::span<const int> ids, std::size_t vocab_size) {
  for (int id : ids) {
    if (id < 0 || static_cast<std::size_t>(id) >= vocab_size) {
      throw std::out_of_range("token id " + std::to_string(id) +
                              " outside vocabulary of size " +
                              std::to_string(vocab_size));
    }
  }
}

}  // namespace

std::string_view ModelKindName(ModelKind kind) {
  for (const auto &[k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

std::optional<ModelKind> ParseModelKind(std::string_view name) {
  for (const auto &[k, n] : kKindNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

bool UsesKnowledge(ModelKind kind) {
  return kind == ModelKind::kBowKnowledge || kind == ModelKind::kMemNet ||
         kind == ModelKind::kTriLstm;
}

bool HasSigmoid(ModelKind kind) { return IsLstm(kind); }

std::string ModelConfig::ToText() const {
  std::ostringstream out;
  out << "kind=" << ModelKindName(kind) << '\n'
      << "embedding_dim=" << embedding_dim << '\n'
      << "hidden_dim=" << hidden_dim << '\n'
      << "vocab_size=" << vocab_size << '\n'
      << "tie_message_response_weights="
      << (tie_message_response_weights ? "true" : "false") << '\n'
      << "separate_assertion_encoder="
      << (separate_assertion_encoder ? "true" : "false") << '\n'
      << "vocab_fingerprint=" << HexString(vocab_fingerprint) << '\n';
  return out.str();
}

ModelConfig ModelConfig::FromText(std::string_view text) {
  ModelConfig config;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("model config: expected key=value, got " +
                                  line);
    }
    std::string_view key = std::string_view(line).substr(0, eq);
    std::string_view value = std::string_view(line).substr(eq + 1);
    if (key == "kind") {
      auto kind = ParseModelKind(value);
      if (!kind) {
        throw std::invalid_argument("model config: unknown kind " +
                                    std::string(value));
      }
      config.kind = *kind;
    } else if (key == "embedding_dim") {
      config.embedding_dim = ParseUnsigned(key, value);
    } else if (key == "hidden_dim") {
      config.hidden_dim = ParseUnsigned(key, value);
    } else if (key == "vocab_size") {
      config.vocab_size = ParseUnsigned(key, value);
    } else if (key == "tie_message_response_weights") {
      config.tie_message_response_weights = ParseBool(key, value);
    } else if (key == "separate_assertion_encoder") {
      config.separate_assertion_encoder = ParseBool(key, value);
    } else if (key == "vocab_fingerprint") {
      config.vocab_fingerprint = ParseUnsigned(key, value, 16);
    } else {
      throw std::invalid_argument("model config: unknown key " +
                                  std::string(key));
    }
  }
  config.Validate();
  return config;
}

std::uint64_t ModelConfig::Hash() const { return HashString(ToText()); }

void ModelConfig::Validate() const {
  if (vocab_size == 0) {
    throw std::invalid_argument("model config: vocab_size must be positive");
  }
  if (kind != ModelKind::kTfIdf && embedding_dim == 0) {
    throw std::invalid_argument("model config: embedding_dim must be positive");
  }
  if (IsLstm(kind) && hidden_dim == 0) {
    throw std::invalid_argument("model config: hidden_dim must be positive");
  }
}

Memory BuildMemory(const KnowledgeIndex &index, const Vocabulary &vocab,
                   const RetrievedSet &retrieved, std::size_t max_entries) {
  Memory memory;
  for (AssertionId id : retrieved.assertion_ids) {
    if (max_entries != 0 && memory.size() >= max_entries) break;
    memory.ids.push_back(id);
    memory.sequences.push_back(
        vocab.Encode(Linearize(index.assertion(id))).ids);
  }
  return memory;
}

Model::Model(ModelConfig config, nn::ParameterStore params)
    : config_(std::move(config)), params_(std::move(params)) {
  config_.Validate();
  ResolveParameters();
}

Model Model::Initialize(const ModelConfig &config, std::uint64_t seed,
                        double init_range) {
  config.Validate();
  nn::ParameterStore store;
  store.set_seed(seed);
  std::mt19937_64 rng(seed);
  const std::size_t v = config.vocab_size;
  const std::size_t e = config.embedding_dim;
  const std::size_t d = config.hidden_dim;
  if (config.kind == ModelKind::kTfIdf) {
    nn::Array idf({v});
    idf.Fill(1.0);
    store.Add("idf", std::move(idf));
    return Model(config, std::move(store));
  }
  nn::Array table({v, e});
  FillUniform(table, rng, init_range);
  store.Add("embedding", std::move(table));
  if (IsLstm(config.kind)) {
    if (config.tie_message_response_weights) {
      nn::LstmParams::Create(store, "utterance_lstm", e, d, rng, init_range);
    } else {
      nn::LstmParams::Create(store, "message_lstm", e, d, rng, init_range);
      nn::LstmParams::Create(store, "response_lstm", e, d, rng, init_range);
    }
    nn::Array w({d, d});
    FillUniform(w, rng, init_range);
    store.Add("W", std::move(w));
    if (config.kind == ModelKind::kTriLstm) {
      if (config.separate_assertion_encoder) {
        nn::LstmParams::Create(store, "assertion_lstm", e, d, rng, init_range);
      }
      nn::Array w_a({d, d});
      FillUniform(w_a, rng, init_range);
      store.Add("W_a", std::move(w_a));
    }
  }
  return Model(config, std::move(store));
}

void Model::ResolveParameters() {
  const std::size_t v = config_.vocab_size;
  const std::size_t e = config_.embedding_dim;
  const std::size_t d = config_.hidden_dim;
  auto require = [&](const std::string &name,
                     std::vector<std::size_t> shape) -> nn::ParamId {
    auto id = params_.Find(name);
    if (!id) {
      throw std::invalid_argument("model " +
                                  std::string(ModelKindName(config_.kind)) +
                                  ": missing parameter " + name);
    }
    if (params_.value(*id).shape() != shape) {
      throw std::invalid_argument("model: parameter " + name + " has shape " +
                                  params_.value(*id).ShapeString());
    }
    return *id;
  };
  auto lstm = [&](const std::string &prefix) {
    nn::LstmParams p;
    try {
      p = nn::LstmParams::Lookup(params_, prefix);
    } catch (const std::out_of_range &e) {
      throw std::invalid_argument("model " +
                                  std::string(ModelKindName(config_.kind)) +
                                  ": " + e.what());
    }
    if (p.input_dim != e || p.hidden_dim != d) {
      throw std::invalid_argument("model: " + prefix +
                                  " does not match the configured sizes");
    }
    return p;
  };

  std::size_t expected = 0;
  if (config_.kind == ModelKind::kTfIdf) {
    idf_ = require("idf", {v});
    expected = 1;
  } else {
    embedding_ = require("embedding", {v, e});
    expected = 1;
  }
  if (IsLstm(config_.kind)) {
    if (config_.tie_message_response_weights) {
      message_lstm_ = lstm("utterance_lstm");
      response_lstm_ = message_lstm_;
      expected += 3;
    } else {
      message_lstm_ = lstm("message_lstm");
      response_lstm_ = lstm("response_lstm");
      expected += 6;
    }
    bilinear_ = require("W", {d, d});
    expected += 1;
    if (config_.kind == ModelKind::kTriLstm) {
      if (config_.separate_assertion_encoder) {
        assertion_lstm_ = lstm("assertion_lstm");
        expected += 3;
      } else {
        assertion_lstm_ = response_lstm_;
      }
      assertion_bilinear_ = require("W_a", {d, d});
      expected += 1;
    }
  }
  if (params_.size() != expected) {
    throw std::invalid_argument("model: unexpected extra parameters");
  }
}

Model Model::FromCheckpoint(const nn::Checkpoint &checkpoint,
                            std::optional<ModelKind> expected) {
  ModelConfig config = ModelConfig::FromText(checkpoint.config_text);
  if (config.Hash() != checkpoint.config_hash) {
    throw std::invalid_argument("checkpoint: config is not in canonical form");
  }
  if (expected && config.kind != *expected) {
    throw std::invalid_argument(
        "checkpoint holds a " + std::string(ModelKindName(config.kind)) +
        " model, expected " + std::string(ModelKindName(*expected)));
  }
  return Model(config, checkpoint.params);
}

Model Model::LoadFile(const std::string &path,
                      std::optional<ModelKind> expected) {
  return FromCheckpoint(nn::LoadCheckpointFile(path), expected);
}

void Model::SaveFile(const std::string &path) const {
  nn::SaveCheckpointFile(path, config_.ToText(), params_);
}

std::string_view Model::score_kind() const {
  return HasSigmoid(config_.kind) ? "probability" : "raw";
}

void Model::FitIdf(const std::vector<std::vector<int>> &documents,
                   int unk_id) {
  if (!idf_) throw std::logic_error("FitIdf: model is not tf-idf");
  std::vector<double> idf =
      ComputeIdf(documents, config_.vocab_size, unk_id);
  nn::Array &target = params_.mutable_value(*idf_);
  std::copy(idf.begin(), idf.end(), target.data().begin());
}

const nn::LstmParams &Model::LstmFor(EncoderRole role) const {
  switch (role) {
    case EncoderRole::kMessage:
      return message_lstm_;
    case EncoderRole::kResponse:
      return response_lstm_;
    case EncoderRole::kAssertion:
      return assertion_lstm_;
  }
  return message_lstm_;
}

Embedding Model::Encode(std::span<const int> ids, EncoderRole role) const {
  if (!embedding_) throw std::logic_error("Encode: model has no embeddings");
  CheckIds(ids, config_.vocab_size);
  const nn::Array &table = params_.value(*embedding_);
  if (IsLstm(config_.kind)) {
    return nn::LstmEncodeIds(params_, LstmFor(role), table, ids);
  }
  return BagOfWords(table, ids);
}

std::vector<ScoredCandidate> Model::ScoreCandidates(
    std::span<const int> message, const Memory &memory,
    const std::vector<std::vector<int>> &candidates) const {
  std::vector<ScoredCandidate> out(candidates.size());
  if (config_.kind == ModelKind::kTfIdf) {
    CheckIds(message, config_.vocab_size);
    const nn::Array &idf = params_.value(*idf_);
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      CheckIds(candidates[i], config_.vocab_size);
      double s = ScoreTfIdf(message, candidates[i], idf.data());
      out[i] = {i, s, s, std::nullopt};
    }
    return out;
  }

  Embedding x = Encode(message, EncoderRole::kMessage);
  std::vector<Embedding> assertions;
  if (UsesKnowledge(config_.kind)) {
    assertions.reserve(memory.size());
    for (const auto &seq : memory.sequences) {
      assertions.push_back(Encode(seq, EncoderRole::kAssertion));
    }
  }
  auto activated = [&](const std::optional<std::size_t> &slot)
      -> std::optional<AssertionId> {
    if (!slot) return std::nullopt;
    return memory.ids[*slot];
  };

  for (std::size_t i = 0; i < candidates.size(); ++i) {
    Embedding y = Encode(candidates[i], EncoderRole::kResponse);
    ScoredCandidate& c = out[i];
    c.index = i;
    switch (config_.kind) {
      case ModelKind::kBow: {
        c.logit = c.score = ScoreBow(x, y);
        break;
      }
      case ModelKind::kBowKnowledge: {
        KnowledgeScore k = ScoreBowKnowledge(x, assertions, y);
        c.logit = k.logit;
        c.score = k.score;
        c.activated_assertion = activated(k.activated);
        break;
      }
      case ModelKind::kMemNet: {
        c.logit = c.score = ScoreMemNet(x, assertions, y);
        break;
      }
      case ModelKind::kDualLstm: {
        LogitScore s = ScoreDual(x, params_.value(*bilinear_), y);
        c.logit = s.logit;
        c.score = s.score;
        break;
      }
      case ModelKind::kTriLstm: {
        KnowledgeScore k =
            ScoreTri(x, assertions, y, params_.value(*bilinear_),
                     params_.value(*assertion_bilinear_));
        c.logit = k.logit;
        c.score = k.score;
        c.activated_assertion = activated(k.activated);
        break;
      }
      case ModelKind::kTfIdf:
        break;
    }
  }
  return out;
}

nn::Var Model::EncodeOnTape(nn::Tape &tape, std::span<const int> ids,
                            EncoderRole role) const {
  CheckIds(ids, config_.vocab_size);
  nn::Var table = tape.Param(*embedding_);
  if (IsLstm(config_.kind)) {
    return nn::LstmEncodeOnTape(tape, LstmFor(role), table, ids);
  }
  if (ids.empty()) return tape.Zeros(config_.embedding_dim);
  std::vector<nn::Var> rows;
  rows.reserve(ids.size());
  for (int id : ids) rows.push_back(tape.Row(table, static_cast<std::size_t>(id)));
  return tape.Sum(rows);
}

nn::Var Model::Logit(nn::Tape &tape, std::span<const int> message,
                     const Memory &memory,
                     std::span<const int> response) const {
  if (!trainable()) {
    throw std::logic_error("tf-idf has no differentiable parameters");
  }
  nn::Var x = EncodeOnTape(tape, message, EncoderRole::kMessage);
  nn::Var y = EncodeOnTape(tape, response, EncoderRole::kResponse);
  std::vector<nn::Var> assertions;
  if (UsesKnowledge(config_.kind)) {
    for (const auto &seq : memory.sequences) {
      assertions.push_back(EncodeOnTape(tape, seq, EncoderRole::kAssertion));
    }
  }

  switch (config_.kind) {
    case ModelKind::kBow:
      return tape.Dot(x, y);
    case ModelKind::kBowKnowledge: {
      nn::Var base = tape.Dot(x, y);
      if (assertions.empty()) return tape.Add(base, tape.Zeros(1));
      std::vector<nn::Var> matches;
      for (nn::Var a : assertions) matches.push_back(tape.Dot(a, y));
      return tape.Add(base, tape.Max(matches));
    }
    case ModelKind::kMemNet: {
      nn::Var base = tape.Dot(x, y);
      if (assertions.empty()) return base;
      std::vector<nn::Var> logits;
      for (nn::Var a : assertions) logits.push_back(tape.Dot(x, a));
      nn::Var p = tape.Softmax(tape.Stack(logits));
      nn::Var o = tape.MatTVec(tape.StackRows(assertions), p);
      return tape.Add(base, tape.Dot(o, y));
    }
    case ModelKind::kDualLstm: {
      nn::Var w = tape.Param(*bilinear_);
      return tape.Dot(x, tape.MatVec(w, y));
    }
    case ModelKind::kTriLstm: {
      nn::Var w = tape.Param(*bilinear_);
      nn::Var base = tape.Dot(x, tape.MatVec(w, y));
      if (assertions.empty()) return tape.Add(base, tape.Zeros(1));
      nn::Var way = tape.MatVec(tape.Param(*assertion_bilinear_), y);
      std::vector<nn::Var> matches;
      for (nn::Var a : assertions) matches.push_back(tape.Dot(a, way));
      return tape.Add(base, tape.Max(matches));
    }
    case ModelKind::kTfIdf:
      break;
  }
  throw std::logic_error("unreachable model kind");
}

nn::Var Model::Loss(nn::Tape &tape, std::span<const int> message,
                    const Memory &memory, std::span<const int> response,
                    int label) const {
  if (label != 0 && label != 1) {
    throw std::invalid_argument("loss label must be 0 or 1");
  }
  nn::Var logit = Logit(tape, message, memory, response);
  return tape.BinaryCrossEntropyWithLogit(logit, static_cast<double>(label));
}

std::size_t LoadPretrainedEmbeddings(std::istream &in, const Vocabulary &vocab,
                                     nn::Array &table) {
  if (table.rank() != 2 || table.rows() != static_cast<std::size_t>(vocab.size())) {
    throw std::invalid_argument("embedding table does not match vocabulary");
  }
  const std::size_t dim = table.cols();
  std::vector<std::uint8_t> filled(table.rows(), 0);
  std::size_t count = 0;
  std::string line;
  std::vector<double> values;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::string token;
    if (!(fields >> token)) continue;
    auto id = vocab.Find(token);
    if (!id || filled[*id]) continue;
    values.clear();
    double v;
    while (fields >> v) values.push_back(v);
    if (values.size() != dim) continue;
    std::copy(values.begin(), values.end(), table.row(*id).begin());
    filled[*id] = 1;
    ++count;
  }
  return count;
}

}  // namespace kgdial
