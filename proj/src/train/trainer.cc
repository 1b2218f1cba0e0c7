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

#include "kgdial/train/trainer.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <stdexcept>

#include <spdlog/spdlog.h>

#include "kgdial/nn/sgd.h"
#include "kgdial/train/evaluate.h"
#include "kgdial/util/hash.h"

namespace kgdial {

namespace {

constexpr std::uint64_t kShuffleStream = 0x5348;

void LoadEmbeddings(Model &model, const TrainConfig &cfg,
                    const Vocabulary *vocab) {
  if (cfg.embedding_init != EmbeddingInit::kPretrained) return;
  if (!vocab) {
    throw std::invalid_argument("pretrained embeddings need the vocabulary");
  }
  std::ifstream in(cfg.pretrained_embeddings);
  if (!in) {
    throw std::runtime_error("cannot open embeddings file " +
                             cfg.pretrained_embeddings);
  }
  nn::ParameterStore &store = model.mutable_params();
  std::size_t filled = LoadPretrainedEmbeddings(
      in, *vocab, store.mutable_value(store.IdOf("embedding")));
  spdlog::info("pretrained embeddings: {} of {} rows", filled, vocab->size());
}

void WriteCheckpoint(const std::string &path, const ModelConfig &config,
                     const nn::ParameterStore &params) {
  if (!path.empty()) nn::SaveCheckpointFile(path, config.ToText(), params);
}

}  // namespace

void TrainConfig::Validate() const {
  if (batch_size < 1) throw std::invalid_argument("batch_size must be >= 1");
  if (!(learning_rate >= 0) || !std::isfinite(learning_rate)) {
    throw std::invalid_argument("learning_rate must be non-negative");
  }
  if (clip_norm < 0) throw std::invalid_argument("clip_norm must be >= 0");
}

TrainResult Train(const ModelConfig &config,
                  const std::vector<TrainingExample> &examples,
                  const TrainConfig &cfg,
                  const std::vector<EvalInstance> *validation,
                  const Vocabulary *vocab) {
  cfg.Validate();
  if (examples.empty()) throw std::invalid_argument("no training examples");
  Model model = Model::Initialize(config, cfg.seed, cfg.init_range);

  if (!model.trainable()) {
    std::vector<std::vector<int>> documents;
    for (const TrainingExample &ex : examples) {
      if (ex.label != 1) continue;
      documents.push_back(ex.message);
      documents.push_back(ex.response);
    }
    model.FitIdf(documents, vocab ? vocab->unk_id() : -1);
    WriteCheckpoint(cfg.checkpoint_path, config, model.params());
    return TrainResult{model, {}, 0, false, false, {}};
  }
  LoadEmbeddings(model, cfg, vocab);

  nn::ParameterStore &params = model.mutable_params();
  nn::ParameterStore best = params;
  std::size_t best_epoch = 0;
  double best_recall = -1;
  std::size_t since_best = 0;
  std::vector<EpochRecord> trace;
  bool stopped_early = false;
  std::string abort_reason;

  std::mt19937_64 rng(MixSeed(cfg.seed, kShuffleStream));
  std::vector<std::size_t> order(examples.size());
  std::iota(order.begin(), order.end(), 0);
  GradientWorkspace workspace(params, cfg.batch_size);
  nn::Gradients total(params);
  std::vector<const TrainingExample *> batch;

  for (std::size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    double loss_sum = 0;
    for (std::size_t start = 0; start < order.size();
         start += cfg.batch_size) {
      std::size_t end = std::min(order.size(), start + cfg.batch_size);
      batch.clear();
      for (std::size_t i = start; i < end; ++i) {
        batch.push_back(&examples[order[i]]);
      }
      double loss =
          workspace.BatchGradient(model, batch, total, cfg.execution);
      if (!std::isfinite(loss)) {
        abort_reason = "non-finite loss in epoch " + std::to_string(epoch);
        break;
      }
      total.Scale(1.0 / static_cast<double>(batch.size()));
      if (cfg.clip_norm > 0) nn::ClipGlobalNorm(total, cfg.clip_norm);
      if (auto bad = total.FirstNonFinite()) {
        abort_reason = "non-finite gradient for " + params.name(*bad) +
                       " in epoch " + std::to_string(epoch);
        break;
      }
      nn::SgdStep(params, total, cfg.learning_rate);
      loss_sum += loss;
    }
    if (!abort_reason.empty()) break;

    EpochRecord record;
    record.epoch = epoch;
    record.mean_loss = loss_sum / static_cast<double>(examples.size());
    if (validation) {
      record.valid_recall_at_1 =
          RecallAtK(ModelScorer(model), *validation, 1, cfg.execution);
    }
    trace.push_back(record);
    spdlog::info("epoch {} loss {:.6f}{}", epoch, record.mean_loss,
                 record.valid_recall_at_1
                     ? fmt::format(" valid R@1 {:.4f}", *record.valid_recall_at_1)
                     : std::string());

    WriteCheckpoint(cfg.checkpoint_path.empty() ? ""
                                                : cfg.checkpoint_path + ".last",
                    config, params);
    bool improved = !validation || *record.valid_recall_at_1 > best_recall;
    if (improved) {
      if (validation) best_recall = *record.valid_recall_at_1;
      best = params;
      best_epoch = epoch;
      since_best = 0;
      WriteCheckpoint(cfg.checkpoint_path, config, params);
    } else if (++since_best >= cfg.patience) {
      stopped_early = true;
      break;
    }
  }

  if (!abort_reason.empty()) spdlog::error("training aborted: {}", abort_reason);
  return TrainResult{Model(config, std::move(best)), std::move(trace),
                     best_epoch, stopped_early, !abort_reason.empty(),
                     abort_reason};
}

std::string FormatLossTrace(const std::vector<EpochRecord> &trace) {
  std::string out;
  char buf[64];
  for (const EpochRecord &r : trace) {
    out += std::to_string(r.epoch);
    out += '\t';
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), r.mean_loss);
    out.append(buf, end);
    out += '\t';
    if (r.valid_recall_at_1) {
      auto [e2, ec2] =
          std::to_chars(buf, buf + sizeof(buf), *r.valid_recall_at_1);
      out.append(buf, e2);
    } else {
      out += '-';
    }
    out += '\n';
  }
  return out;
}

}  // namespace kgdial
